#ifndef BIMS_EXPONENTS_HPP
#define BIMS_EXPONENTS_HPP

#include <optional>
#include <string>

#include "bims/channel.hpp"
#include "bims/extremes.hpp"

namespace bims {

/// Default upper search limit for the exponents whose supremum is taken
/// over an unbounded rho range; hitting it is reported, never hidden.
inline constexpr double kDefaultRhoCap = 64.0;

enum class BoundaryFlag { Interior, LowerBoundary, UpperBoundary, Capped };

const char* boundary_flag_name(BoundaryFlag flag);

struct ExponentResult {
  double value = 0.0;     // bits; clamped at 0 (a negative bound is vacuous)
  double rho_star = 0.0;  // maximizer within the search interval
  BoundaryFlag at_boundary = BoundaryFlag::Interior;
  std::optional<double> rho_cap_used;  // set only for capped searches
};

/// max_{0 <= rho <= 1} E0(rho) - rho R.
ExponentResult random_coding(const BimsChannel& ch, double rate);

/// sup_{rho > 0} E0(rho) - rho R, searched up to rho_cap.
ExponentResult sphere_packing(const BimsChannel& ch, double rate,
                              double rho_cap = kDefaultRhoCap);

/// max_{rho >= 1} Ex(rho) - rho R with Ex(rho) = -rho log2 (1+Z^(1/rho))/2.
/// Z = 0 turns Ex into rho and the growth is capped and flagged.
ExponentResult expurgated(const BimsChannel& ch, double rate,
                          double rho_cap = kDefaultRhoCap);

/// sup_{-1 < rho <= 0} E0(rho) - rho R. The open end is handled by
/// comparing the interior search against the analytic rho -> -1 limit
/// R - log2(sum_y max_x P(y|x)).
ExponentResult strong_converse(const BimsChannel& ch, double rate);

/// sup_{rho >= 0} (E0(rho) - rho R)/(1+rho), grid pre-scan plus
/// golden-section (the objective is only assumed quasi-concave).
ExponentResult gfb_exponent(const BimsChannel& ch, double rate,
                            double rho_cap = kDefaultRhoCap);

/// max_{0 <= rho <= 1} E0(rho, s=1) - rho R.
ExponentResult dtb_exponent(const BimsChannel& ch, double rate);

enum class ExponentKind {
  RandomCoding,
  SpherePacking,
  Expurgated,
  StrongConverse,
  Gfb,
  Dtb,
};

const char* exponent_kind_name(ExponentKind kind);
std::optional<ExponentKind> exponent_kind_from_name(const std::string& name);

ExponentResult evaluate_exponent(ExponentKind kind, const BimsChannel& ch, double rate);

/// The chosen exponent evaluated on the BSC and BEC of capacity c. For
/// the rate-below-capacity exponents the BSC attains the lower bound and
/// the BEC the upper; for the strong converse the two evaluations are
/// sorted and labelled by which channel produced them.
EnvelopePair exponent_envelope(ExponentKind kind, double c, double rate);

struct ShulmanFederInput {
  long long n = 1;      // block length
  double rate = 0.0;    // bits
  double alpha = 1.0;   // distance-spectrum ratio, >= 1
};

/// Random-coding exponent at the spectrum-shifted rate R + log2(alpha)/n.
double shulman_feder(const BimsChannel& ch, const ShulmanFederInput& input);

}  // namespace bims

#endif  // BIMS_EXPONENTS_HPP
