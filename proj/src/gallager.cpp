#include "bims/gallager.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "bims/extremes.hpp"

namespace bims {

namespace {

// r^s for r in [0, 1]; underflows to 0 instead of raising errors when s
// is huge (rho near -1).
double pow01(double r, double s) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return std::pow(r, s);
}

double second_central_difference(const std::function<double(double)>& f, double x,
                                 double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

double f_rho(const BimsChannel& ch, double rho) {
  require_valid_rho(rho);
  const double s = 1.0 / (1.0 + rho);
  const auto r0 = ch.row(0);
  const auto r1 = ch.row(1);
  double total = 0.0;
  for (std::size_t y = 0; y < ch.output_count(); ++y) {
    const double p0 = r0[y], p1 = r1[y];
    const double m = std::max(p0, p1);
    if (m <= 0.0) continue;
    // (1/2 p0^s + 1/2 p1^s)^(1+rho) = m * (1/2 (p0/m)^s + 1/2 (p1/m)^s)^(1+rho):
    // the factored maximum carries total exponent s (1+rho) = 1 and the
    // remaining base lies in [1/2, 1], so nothing overflows for any rho.
    const double inner = 0.5 * pow01(p0 / m, s) + 0.5 * pow01(p1 / m, s);
    total += m * std::pow(inner, 1.0 + rho);
  }
  return total;
}

double f_rho_via_decomposition(const BimsChannel& ch, double rho) {
  require_valid_rho(rho);
  double total = 0.0;
  for (const Subchannel& sub : decompose(ch).entries)
    total += sub.mass * f_bsc_of_eps(rho, sub.crossover);
  return total;
}

double e0(const BimsChannel& ch, double rho) { return -std::log2(f_rho(ch, rho)); }

double f_rho_s(const BimsChannel& ch, double rho, double s) {
  require_valid_rho(rho);
  if (!(s >= 0.0)) throw DomainError("f_rho_s needs s >= 0");
  const auto r0 = ch.row(0);
  const auto r1 = ch.row(1);
  double total = 0.0;
  for (std::size_t y = 0; y < ch.output_count(); ++y) {
    const double p[2] = {r0[y], r1[y]};
    double qs = 0.0;  // sum_x' 1/2 P(y|x')^s with 0^s treated as 0
    for (double pyx : p)
      if (pyx > 0.0) qs += 0.5 * std::exp(s * std::log(pyx));
    if (qs <= 0.0) continue;
    for (double pyx : p) {
      if (pyx <= 0.0) continue;  // zero-likelihood pair carries no mass
      const double log_pyx = std::log(pyx);
      total += std::exp(std::log(0.5) + log_pyx + rho * (std::log(qs) - s * log_pyx));
    }
  }
  return total;
}

double e0_s(const BimsChannel& ch, double rho, double s) {
  return -std::log2(f_rho_s(ch, rho, s));
}

double bhattacharyya(const BimsChannel& ch) {
  const auto r0 = ch.row(0);
  const auto r1 = ch.row(1);
  double direct = 0.0;
  for (std::size_t y = 0; y < ch.output_count(); ++y)
    direct += std::sqrt(r0[y] * r1[y]);
  const double via_f = 2.0 * f_rho(ch, 1.0) - 1.0;
  if (std::abs(direct - via_f) > 1e-12) {
    std::ostringstream msg;
    msg << "Bhattacharyya routes disagree: " << direct << " vs 2F(1)-1 = " << via_f;
    throw std::logic_error(msg.str());
  }
  return direct;
}

double cutoff_rate(const BimsChannel& ch) { return e0(ch, 1.0); }

double e0_derivative(const BimsChannel& ch, double rho) {
  require_valid_rho(rho);
  double h = 1e-3 * (1.0 + std::abs(rho));
  // Keep the stencil inside the admissible range near the -1 boundary.
  if (rho - h < kMinRho) h = 0.5 * (rho - kMinRho);
  if (h < 1e-9) {  // pinned to the boundary: one-sided difference
    const double step = 1e-6;
    return (e0(ch, rho + step) - e0(ch, rho)) / step;
  }
  const auto central = [&](double step) {
    return (e0(ch, rho + step) - e0(ch, rho - step)) / (2.0 * step);
  };
  const double d_h = central(h);
  const double d_h2 = central(0.5 * h);
  return (4.0 * d_h2 - d_h) / 3.0;  // Richardson, error O(h^4)
}

double dispersion(const BimsChannel& ch) {
  // Route (a): variance of the information density.
  const auto samples = info_density_distribution(ch);
  double mean = 0.0;
  for (const auto& s : samples) mean += s.probability * s.value;
  double var = 0.0;
  for (const auto& s : samples)
    var += s.probability * (s.value - mean) * (s.value - mean);

  // Route (b): -E0''(0, s=1)/ln 2. E0(rho,1) is bits of a cumulant
  // generating function in rho; one ln 2 rescales the curvature to the
  // bits^2 of route (a).
  const double h = 1e-3;
  const double d2 = second_central_difference(
      [&](double r) { return e0_s(ch, r, 1.0); }, 0.0, h);
  const double via_fd = -d2 / std::log(2.0);

  if (std::abs(var - via_fd) > 1e-4) {
    std::ostringstream msg;
    msg << "dispersion routes disagree: variance " << var << " vs finite difference "
        << via_fd;
    throw std::logic_error(msg.str());
  }
  return var;
}

double central_abs_moment(const BimsChannel& ch, int k) {
  if (k < 1) throw DomainError("central_abs_moment needs k >= 1");
  const auto samples = info_density_distribution(ch);
  double mean = 0.0;
  for (const auto& s : samples) mean += s.probability * s.value;
  double moment = 0.0;
  for (const auto& s : samples)
    moment += s.probability * std::pow(std::abs(s.value - mean), k);
  return moment;
}

double f_limit_rho_to_minus_one(const BimsChannel& ch) {
  const auto r0 = ch.row(0);
  const auto r1 = ch.row(1);
  double total = 0.0;
  for (std::size_t y = 0; y < ch.output_count(); ++y)
    total += std::max(r0[y], r1[y]);
  return total;
}

GallagerReport gallager_report(const BimsChannel& ch, const std::vector<double>& rhos) {
  GallagerReport report;
  report.capacity = capacity(ch);
  report.f1 = f_rho(ch, 1.0);
  report.e0_at.reserve(rhos.size());
  for (double rho : rhos) report.e0_at.emplace_back(rho, e0(ch, rho));
  report.z = 2.0 * report.f1 - 1.0;
  report.r0 = -std::log2(report.f1);
  report.dispersion = dispersion(ch);
  return report;
}

}  // namespace bims
