#ifndef BIMS_GALLAGER_HPP
#define BIMS_GALLAGER_HPP

#include <utility>
#include <vector>

#include "bims/channel.hpp"

namespace bims {

/// Gallager's F function under equiprobable inputs,
///   F(rho) = sum_y (sum_x 1/2 P(y|x)^(1/(1+rho)))^(1+rho),
/// evaluated per output with the dominant likelihood factored out so the
/// outer exponent collapses (total exponent of the factor is exactly 1).
/// Throws RhoOutOfRangeError for rho below kMinRho.
double f_rho(const BimsChannel& ch, double rho);

/// Same quantity through the subchannel decomposition,
/// sum_a p_a F_bsc(rho; eps_a); used as the second route in cross-checks.
double f_rho_via_decomposition(const BimsChannel& ch, double rho);

/// E0(rho) = -log2 F(rho), in bits.
double e0(const BimsChannel& ch, double rho);

/// Two-parameter family F(rho, s); at s = 1/(1+rho) it equals f_rho.
/// Zero-likelihood (x, y) terms contribute nothing (0^0 counts as 0).
double f_rho_s(const BimsChannel& ch, double rho, double s);

/// -log2 F(rho, s) in bits.
double e0_s(const BimsChannel& ch, double rho, double s);

/// Z = sum_y sqrt(P(y|x0) P(y|x1)). Computed directly and as 2 F(1) - 1;
/// the two routes must agree to 1e-12 or the call fails loudly.
double bhattacharyya(const BimsChannel& ch);

/// R0 = E0(1) in bits.
double cutoff_rate(const BimsChannel& ch);

/// dE0/drho by Richardson-extrapolated central differences; equals the
/// capacity at rho = 0.
double e0_derivative(const BimsChannel& ch, double rho);

/// Channel dispersion in bits^2: the variance of the information density,
/// cross-checked against -E0''(0, s=1)/ln 2 from a second central
/// difference at step 1e-3 (agreement within 1e-4 enforced).
double dispersion(const BimsChannel& ch);

/// E[|i(X;Y) - I(X;Y)|^k].
double central_abs_moment(const BimsChannel& ch, int k);

/// lim_{rho -> -1+} F(rho) = sum_y max_x P(y|x).
double f_limit_rho_to_minus_one(const BimsChannel& ch);

struct GallagerReport {
  double capacity = 0.0;
  double f1 = 0.0;                               // F(1)
  std::vector<std::pair<double, double>> e0_at;  // (rho, E0(rho))
  double z = 0.0;                                // 2 F(1) - 1
  double r0 = 0.0;                               // -log2 F(1)
  double dispersion = 0.0;                       // bits^2
};

GallagerReport gallager_report(const BimsChannel& ch, const std::vector<double>& rhos);

}  // namespace bims

#endif  // BIMS_GALLAGER_HPP
