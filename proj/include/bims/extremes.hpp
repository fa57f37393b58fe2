#ifndef BIMS_EXTREMES_HPP
#define BIMS_EXTREMES_HPP

#include <functional>
#include <string>

#include "bims/errors.hpp"

namespace bims {

/// Smallest rho accepted anywhere; 1/(1+rho) blows up at -1.
inline constexpr double kMinRho = -1.0 + 1e-6;

void require_valid_rho(double rho);

/// Binary entropy in bits.
double binary_entropy(double p);

/// Inverse of binary_entropy on [0, 1/2], by bisection. x outside [0, 1]
/// throws DomainError.
double binary_entropy_inv(double x);

/// F of a BSC with crossover eps. Evaluated as
///   2^-rho * (1-eps) * (1 + z^s)^(1+rho),  z = eps/(1-eps), s = 1/(1+rho),
/// which stays finite for rho down to kMinRho where eps^s underflows.
double f_bsc_of_eps(double rho, double eps);

/// F of a BEC with erasure eps: 2^-rho (1-eps) + eps.
double f_bec_of_eps(double rho, double eps);

/// BEC envelope as a function of capacity: 1 + (2^-rho - 1) C.
double f_bec_of_c(double rho, double c);

/// BSC envelope as a function of capacity: f_bsc_of_eps at eps = h^-1(1-C).
double f_bsc_of_c(double rho, double c);

/// Inverses with respect to C. rho = 0 throws RhoZeroError (F(0) = 1 for
/// every channel); F outside the attainable band throws FOutOfRangeError.
double c_of_f_bec(double f, double rho);
double c_of_f_bsc(double f, double rho);

/// True iff f_bec_of_c(rho,c) <= f <= f_bsc_of_c(rho,c) within 1e-12.
bool is_feasible(double c, double f, double rho);

enum class ExtremalChannel { Bec, Bsc };

const char* extremal_channel_name(ExtremalChannel ch);

struct EnvelopePair {
  double lower = 0.0;
  double upper = 0.0;
  ExtremalChannel lower_attained_by = ExtremalChannel::Bec;
  ExtremalChannel upper_attained_by = ExtremalChannel::Bsc;
};

/// (F_bec, F_bsc) at fixed capacity; BEC attains the lower bound.
EnvelopePair envelope_f(double rho, double c);

/// Monotone map g applied to the F envelope. Declared direction is
/// validated against sampled behaviour on [0, 2] at construction.
class MonotoneMap {
 public:
  enum class Direction { Increasing, Decreasing };

  static MonotoneMap increasing(std::function<double(double)> g);
  static MonotoneMap decreasing(std::function<double(double)> g);

  double operator()(double x) const { return g_(x); }
  Direction direction() const { return direction_; }

 private:
  MonotoneMap(std::function<double(double)> g, Direction d);

  std::function<double(double)> g_;
  Direction direction_;
};

/// Envelope of g(F(rho)); a decreasing g swaps bound roles and labels.
EnvelopePair envelope_mapped(const MonotoneMap& gmap, double rho, double c);

/// Capacity band at fixed Bhattacharyya parameter: BEC gives 1 - Z,
/// BSC gives 1 - h((1 - sqrt(1 - Z^2))/2).
EnvelopePair c_envelope_at_z(double z);

struct BsecParams {
  double eps_s = 0.0;
  double eps_e = 0.0;
};

/// Capacity of a BSEC; the non-erased subchannel is a BSC with
/// crossover eps_s/(1-eps_e).
double bsec_capacity(double eps_s, double eps_e);

/// F of a BSEC: (1-eps_e) * f_bsc_of_eps(rho, eps_s/(1-eps_e)) + eps_e.
double f_bsec(double rho, double eps_s, double eps_e);

/// Finds a BSEC whose (capacity, F(rho)) equals (c, f_target). The
/// capacity-c family is parametrized by eps_e in [0, 1-c] with eps_s
/// recovered through h^-1; the root in eps_e is located by a 1000-cell
/// sign scan followed by bisection, returning the smallest root.
/// Throws InfeasibleError when (c, f_target) is outside the band.
BsecParams synthesize_bsec(double c, double f_target, double rho);

}  // namespace bims

#endif  // BIMS_EXTREMES_HPP
