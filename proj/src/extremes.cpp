#include "bims/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "bims/search.hpp"

namespace bims {

namespace {

constexpr double kFeasibilityTol = 1e-12;
// Slack accepted on F before declaring it outside the attainable band;
// inverse maps are routinely fed F values that sit on the band edge up
// to round-off.
constexpr double kFRangeSlack = 1e-9;

void require_nonzero_rho(double rho) {
  require_valid_rho(rho);
  if (rho == 0.0)
    throw RhoZeroError("rho = 0 carries no capacity information (F(0) = 1)");
}

}  // namespace

void require_valid_rho(double rho) {
  if (!(rho >= kMinRho)) {
    std::ostringstream msg;
    msg << "rho = " << rho << " below the allowed minimum " << kMinRho;
    throw RhoOutOfRangeError(msg.str());
  }
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy needs p in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_inv(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy_inv needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double f_bsc_of_eps(double rho, double eps) {
  require_valid_rho(rho);
  if (!(eps >= 0.0 && eps <= 0.5)) throw DomainError("f_bsc_of_eps needs eps in [0, 1/2]");
  if (eps == 0.0) return std::exp2(-rho);
  if (eps == 0.5) return 1.0;
  const double s = 1.0 / (1.0 + rho);
  const double z = eps / (1.0 - eps);
  // 2^-rho (eps^s + (1-eps)^s)^(1+rho) with (1-eps)^s factored out; z^s
  // underflows gracefully as rho -> -1 where s explodes.
  const double zs = std::exp(s * std::log(z));
  return std::exp2(-rho) * (1.0 - eps) * std::exp((1.0 + rho) * std::log1p(zs));
}

double f_bec_of_eps(double rho, double eps) {
  require_valid_rho(rho);
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("f_bec_of_eps needs eps in [0, 1]");
  return std::exp2(-rho) * (1.0 - eps) + eps;
}

double f_bec_of_c(double rho, double c) {
  require_valid_rho(rho);
  // 1 + (2^-rho - 1) C in lerp form; exact at both capacity endpoints.
  return (1.0 - c) + c * std::exp2(-rho);
}

double f_bsc_of_c(double rho, double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("f_bsc_of_c needs C in [0, 1]");
  return f_bsc_of_eps(rho, binary_entropy_inv(1.0 - c));
}

double c_of_f_bec(double f, double rho) {
  require_nonzero_rho(rho);
  const double f1 = std::exp2(-rho);  // value at C = 1
  const double lo = std::min(1.0, f1), hi = std::max(1.0, f1);
  if (f < lo - kFRangeSlack || f > hi + kFRangeSlack) {
    std::ostringstream msg;
    msg << "F = " << f << " outside the BEC range [" << lo << ", " << hi << "]";
    throw FOutOfRangeError(msg.str());
  }
  const double c = (f - 1.0) / (f1 - 1.0);
  return std::clamp(c, 0.0, 1.0);
}

double c_of_f_bsc(double f, double rho) {
  require_nonzero_rho(rho);
  const double f1 = std::exp2(-rho);  // value at C = 1 (eps = 0)
  const double lo = std::min(1.0, f1), hi = std::max(1.0, f1);
  if (f < lo - kFRangeSlack || f > hi + kFRangeSlack) {
    std::ostringstream msg;
    msg << "F = " << f << " outside the BSC range [" << lo << ", " << hi << "]";
    throw FOutOfRangeError(msg.str());
  }
  const double target = std::clamp(f, lo, hi);
  return bisect_root([&](double c) { return f_bsc_of_c(rho, c) - target; }, 0.0, 1.0);
}

bool is_feasible(double c, double f, double rho) {
  require_valid_rho(rho);
  if (!(c >= 0.0 && c <= 1.0)) return false;
  return f >= f_bec_of_c(rho, c) - kFeasibilityTol &&
         f <= f_bsc_of_c(rho, c) + kFeasibilityTol;
}

const char* extremal_channel_name(ExtremalChannel ch) {
  return ch == ExtremalChannel::Bec ? "BEC" : "BSC";
}

EnvelopePair envelope_f(double rho, double c) {
  EnvelopePair env;
  env.lower = f_bec_of_c(rho, c);
  env.upper = f_bsc_of_c(rho, c);
  env.lower_attained_by = ExtremalChannel::Bec;
  env.upper_attained_by = ExtremalChannel::Bsc;
  return env;
}

MonotoneMap::MonotoneMap(std::function<double(double)> g, Direction d)
    : g_(std::move(g)), direction_(d) {
  // The declared direction must match sampled behaviour on [0, 2].
  constexpr int kSamples = 1000;
  constexpr double kSlack = 1e-12;
  double prev = g_(0.0);
  for (int i = 1; i <= kSamples; ++i) {
    const double cur = g_(2.0 * i / kSamples);
    const bool ok = direction_ == Direction::Increasing ? cur >= prev - kSlack
                                                        : cur <= prev + kSlack;
    if (!ok) throw DomainError("monotone map direction does not match its samples");
    prev = cur;
  }
}

MonotoneMap MonotoneMap::increasing(std::function<double(double)> g) {
  return MonotoneMap(std::move(g), Direction::Increasing);
}

MonotoneMap MonotoneMap::decreasing(std::function<double(double)> g) {
  return MonotoneMap(std::move(g), Direction::Decreasing);
}

EnvelopePair envelope_mapped(const MonotoneMap& gmap, double rho, double c) {
  const EnvelopePair base = envelope_f(rho, c);
  EnvelopePair env;
  if (gmap.direction() == MonotoneMap::Direction::Increasing) {
    env.lower = gmap(base.lower);
    env.upper = gmap(base.upper);
    env.lower_attained_by = base.lower_attained_by;
    env.upper_attained_by = base.upper_attained_by;
  } else {
    env.lower = gmap(base.upper);
    env.upper = gmap(base.lower);
    env.lower_attained_by = base.upper_attained_by;
    env.upper_attained_by = base.lower_attained_by;
  }
  return env;
}

EnvelopePair c_envelope_at_z(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("c_envelope_at_z needs Z in [0, 1]");
  EnvelopePair env;
  env.lower = 1.0 - z;  // BEC has Z = eps, C = 1 - eps
  env.lower_attained_by = ExtremalChannel::Bec;
  // BSC: Z = 2 sqrt(eps (1-eps)) inverted on eps in [0, 1/2].
  const double eps = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - z * z)));
  env.upper = 1.0 - binary_entropy(eps);
  env.upper_attained_by = ExtremalChannel::Bsc;
  return env;
}

double bsec_capacity(double eps_s, double eps_e) {
  if (eps_e >= 1.0) return 0.0;
  return (1.0 - eps_e) * (1.0 - binary_entropy(eps_s / (1.0 - eps_e)));
}

double f_bsec(double rho, double eps_s, double eps_e) {
  require_valid_rho(rho);
  if (eps_e >= 1.0) return 1.0;  // all-erasure channel
  return (1.0 - eps_e) * f_bsc_of_eps(rho, eps_s / (1.0 - eps_e)) + eps_e;
}

BsecParams synthesize_bsec(double c, double f_target, double rho) {
  require_valid_rho(rho);
  if (!is_feasible(c, f_target, rho)) {
    std::ostringstream msg;
    msg << "(C = " << c << ", F = " << f_target << ") infeasible at rho = " << rho;
    throw InfeasibleError(msg.str());
  }

  // Capacity-c family: eps_e in [0, 1-c] with the conditional crossover
  // recovered through h^-1. eps_e = 0 is the BSC, eps_e = 1-c the BEC.
  const auto eps_s_for = [&](double eps_e) {
    if (eps_e >= 1.0) return 0.0;
    const double q = binary_entropy_inv(1.0 - c / (1.0 - eps_e));
    return (1.0 - eps_e) * q;
  };
  const auto f_minus_target = [&](double eps_e) {
    return f_bsec(rho, eps_s_for(eps_e), eps_e) - f_target;
  };

  const double eps_e_max = 1.0 - c;
  constexpr int kScanCells = 1000;
  constexpr double kHitTol = 1e-12;

  // Monotonicity of F along the family is not guaranteed, so scan for
  // the first sign change (smallest root) before bisecting.
  double prev_x = 0.0;
  double prev_f = f_minus_target(0.0);
  if (std::abs(prev_f) <= kHitTol) return {eps_s_for(0.0), 0.0};
  for (int i = 1; i <= kScanCells; ++i) {
    const double x = eps_e_max * i / kScanCells;
    const double fx = f_minus_target(x);
    if (std::abs(fx) <= kHitTol) return {eps_s_for(x), x};
    if ((fx < 0.0) != (prev_f < 0.0)) {
      const double root = bisect_root(f_minus_target, prev_x, x);
      return {eps_s_for(root), root};
    }
    prev_x = x;
    prev_f = fx;
  }
  // Feasibility guarantees a root; reaching here means it sits within
  // round-off of an endpoint.
  if (std::abs(prev_f) <= 1e-9) return {eps_s_for(eps_e_max), eps_e_max};
  throw InfeasibleError("no BSEC root located despite feasible target");
}

}  // namespace bims
