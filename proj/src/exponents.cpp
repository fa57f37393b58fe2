#include "bims/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bims/gallager.hpp"
#include "bims/search.hpp"

namespace bims {

namespace {

// Argmax closer to an interval end than this snaps onto it, so boundary
// optima report the exact endpoint.
constexpr double kBoundarySnap = 1e-7;

ExponentResult maximize_on(const std::function<double(double)>& objective, double lo,
                           double hi, bool capped_interval,
                           std::optional<double> rho_cap) {
  ScalarMax best = grid_then_golden_max(objective, lo, hi, 129);
  // Endpoints stay in contention: suprema of these objectives are often
  // attained at the edge of the search range.
  const double f_lo = objective(lo);
  const double f_hi = objective(hi);
  double x = best.x, v = best.value;
  if (f_lo >= v) {
    x = lo;
    v = f_lo;
  }
  if (f_hi > v) {
    x = hi;
    v = f_hi;
  }
  if (std::abs(x - lo) < kBoundarySnap * (1.0 + std::abs(lo))) {
    x = lo;
    v = std::max(v, f_lo);
  } else if (std::abs(x - hi) < kBoundarySnap * (1.0 + std::abs(hi))) {
    x = hi;
    v = std::max(v, f_hi);
  }

  ExponentResult result;
  result.rho_star = x;
  // A negative bound is vacuous, and anything below 1e-12 bits is
  // round-off of the F(0) = 1 identity, not a real exponent.
  result.value = v < 1e-12 ? 0.0 : v;
  result.rho_cap_used = rho_cap;
  if (x == lo)
    result.at_boundary = BoundaryFlag::LowerBoundary;
  else if (x == hi)
    result.at_boundary = capped_interval ? BoundaryFlag::Capped : BoundaryFlag::UpperBoundary;
  else
    result.at_boundary = BoundaryFlag::Interior;
  return result;
}

}  // namespace

const char* boundary_flag_name(BoundaryFlag flag) {
  switch (flag) {
    case BoundaryFlag::Interior: return "interior";
    case BoundaryFlag::LowerBoundary: return "lower-boundary";
    case BoundaryFlag::UpperBoundary: return "upper-boundary";
    case BoundaryFlag::Capped: return "capped";
  }
  return "unknown";
}

ExponentResult random_coding(const BimsChannel& ch, double rate) {
  if (!(rate >= 0.0)) throw DomainError("random_coding needs R >= 0");
  return maximize_on([&](double rho) { return e0(ch, rho) - rho * rate; }, 0.0, 1.0,
                     false, std::nullopt);
}

ExponentResult sphere_packing(const BimsChannel& ch, double rate, double rho_cap) {
  if (!(rate >= 0.0)) throw DomainError("sphere_packing needs R >= 0");
  return maximize_on([&](double rho) { return e0(ch, rho) - rho * rate; }, 0.0, rho_cap,
                     true, rho_cap);
}

ExponentResult expurgated(const BimsChannel& ch, double rate, double rho_cap) {
  if (!(rate >= 0.0)) throw DomainError("expurgated needs R >= 0");
  const double z = bhattacharyya(ch);
  // Ex(rho) = rho (1 - log2(1 + Z^(1/rho))); Z^(1/rho) -> 1 keeps log1p
  // well conditioned for large rho, and Z = 0 degenerates to Ex = rho.
  const auto ex = [z](double rho) {
    const double zr = z > 0.0 ? std::exp(std::log(z) / rho) : 0.0;
    return rho * (1.0 - std::log1p(zr) / std::log(2.0));
  };
  return maximize_on([&](double rho) { return ex(rho) - rho * rate; }, 1.0, rho_cap,
                     true, rho_cap);
}

ExponentResult strong_converse(const BimsChannel& ch, double rate) {
  if (!(rate >= 0.0)) throw DomainError("strong_converse needs R >= 0");
  ExponentResult result = maximize_on(
      [&](double rho) { return e0(ch, rho) - rho * rate; }, kMinRho, 0.0, false,
      std::nullopt);
  // The supremum over the open end rho -> -1 may only be attained in the
  // limit; F there tends to sum_y max_x P(y|x).
  const double boundary = rate - std::log2(f_limit_rho_to_minus_one(ch));
  if (boundary > result.value) {
    result.value = boundary;
    result.rho_star = kMinRho;
    result.at_boundary = BoundaryFlag::LowerBoundary;
  }
  return result;
}

ExponentResult gfb_exponent(const BimsChannel& ch, double rate, double rho_cap) {
  if (!(rate >= 0.0)) throw DomainError("gfb_exponent needs R >= 0");
  return maximize_on(
      [&](double rho) { return (e0(ch, rho) - rho * rate) / (1.0 + rho); }, 0.0,
      rho_cap, true, rho_cap);
}

ExponentResult dtb_exponent(const BimsChannel& ch, double rate) {
  if (!(rate >= 0.0)) throw DomainError("dtb_exponent needs R >= 0");
  return maximize_on([&](double rho) { return e0_s(ch, rho, 1.0) - rho * rate; }, 0.0,
                     1.0, false, std::nullopt);
}

const char* exponent_kind_name(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::RandomCoding: return "random_coding";
    case ExponentKind::SpherePacking: return "sphere_packing";
    case ExponentKind::Expurgated: return "expurgated";
    case ExponentKind::StrongConverse: return "strong_converse";
    case ExponentKind::Gfb: return "gfb";
    case ExponentKind::Dtb: return "dtb";
  }
  return "unknown";
}

std::optional<ExponentKind> exponent_kind_from_name(const std::string& name) {
  if (name == "random_coding") return ExponentKind::RandomCoding;
  if (name == "sphere_packing") return ExponentKind::SpherePacking;
  if (name == "expurgated") return ExponentKind::Expurgated;
  if (name == "strong_converse") return ExponentKind::StrongConverse;
  if (name == "gfb") return ExponentKind::Gfb;
  if (name == "dtb") return ExponentKind::Dtb;
  return std::nullopt;
}

ExponentResult evaluate_exponent(ExponentKind kind, const BimsChannel& ch, double rate) {
  switch (kind) {
    case ExponentKind::RandomCoding: return random_coding(ch, rate);
    case ExponentKind::SpherePacking: return sphere_packing(ch, rate);
    case ExponentKind::Expurgated: return expurgated(ch, rate);
    case ExponentKind::StrongConverse: return strong_converse(ch, rate);
    case ExponentKind::Gfb: return gfb_exponent(ch, rate);
    case ExponentKind::Dtb: return dtb_exponent(ch, rate);
  }
  throw DomainError("unknown exponent kind");
}

EnvelopePair exponent_envelope(ExponentKind kind, double c, double rate) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("exponent_envelope needs C in [0, 1]");
  const BimsChannel bsc = BimsChannel::bsc(binary_entropy_inv(1.0 - c));
  const BimsChannel bec = BimsChannel::bec(1.0 - c);
  const double v_bsc = evaluate_exponent(kind, bsc, rate).value;
  const double v_bec = evaluate_exponent(kind, bec, rate).value;

  EnvelopePair env;
  if (kind == ExponentKind::StrongConverse) {
    // Order empirically; labels follow the attaining channel.
    if (v_bsc <= v_bec) {
      env = {v_bsc, v_bec, ExtremalChannel::Bsc, ExtremalChannel::Bec};
    } else {
      env = {v_bec, v_bsc, ExtremalChannel::Bec, ExtremalChannel::Bsc};
    }
  } else {
    env = {v_bsc, v_bec, ExtremalChannel::Bsc, ExtremalChannel::Bec};
  }
  return env;
}

double shulman_feder(const BimsChannel& ch, const ShulmanFederInput& input) {
  if (input.n < 1) throw DomainError("shulman_feder needs n >= 1");
  if (!(input.alpha >= 1.0)) throw DomainError("shulman_feder needs alpha >= 1");
  if (!(input.rate >= 0.0)) throw DomainError("shulman_feder needs R >= 0");
  const double shifted = input.rate + std::log2(input.alpha) / static_cast<double>(input.n);
  return random_coding(ch, shifted).value;
}

}  // namespace bims
