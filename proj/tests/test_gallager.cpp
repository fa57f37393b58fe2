#include <cmath>

#include "bims/channel.hpp"
#include "bims/extremes.hpp"
#include "bims/gallager.hpp"
#include "bims/verify.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bims;
using testutil::near;

namespace {

const double kEpsHalfCap = testutil::oracle_h_inv(0.5);  // BSC at capacity 1/2

// Literal double-sum evaluation of F(rho, s), independent of the
// log-domain implementation path.
double f_rho_s_literal(const BimsChannel& ch, double rho, double s) {
  double total = 0.0;
  for (std::size_t y = 0; y < ch.output_count(); ++y) {
    const double p[2] = {ch.row(0)[y], ch.row(1)[y]};
    double qs = 0.0;
    for (double pyx : p)
      if (pyx > 0.0) qs += 0.5 * std::pow(pyx, s);
    for (double pyx : p)
      if (pyx > 0.0) total += 0.5 * pyx * std::pow(qs / std::pow(pyx, s), rho);
  }
  return total;
}

// Analytic BEC derivative dE0/drho = 2^-rho (1-e) / (2^-rho (1-e) + e).
double bec_e0_prime(double rho, double eps) {
  const double a = std::exp2(-rho) * (1.0 - eps);
  return a / (a + eps);
}

}  // namespace

TEST_CASE("F(0) = 1 for every channel") {
  for (const auto& ch :
       {BimsChannel::bsc(0.3), BimsChannel::bec(0.7), BimsChannel::bsec(0.1, 0.3),
        random_bims(7, 6), BimsChannel::biawgn(0.0, 201)}) {
    CHECK(near(f_rho(ch, 0.0), 1.0, 1e-12));
  }
}

TEST_CASE("f_rho closed-form spot values") {
  CHECK(near(f_rho(BimsChannel::bec(0.5), 1.0), 0.75, 1e-12));
  const double oracle = 0.5 * (1.0 + 2.0 * std::sqrt(kEpsHalfCap * (1.0 - kEpsHalfCap)));
  CHECK(near(f_rho(BimsChannel::bsc(kEpsHalfCap), 1.0), oracle, 1e-12));
  CHECK(near(f_rho(BimsChannel::bsc(kEpsHalfCap), 1.0), 0.81293, 1e-4));
  CHECK_THROWS_AS(f_rho(BimsChannel::bsc(0.1), -1.0), RhoOutOfRangeError);
}

TEST_CASE("e0 spot values") {
  CHECK(near(e0(BimsChannel::bsc(0.25), 0.0), 0.0, 1e-12));
  CHECK(near(e0(BimsChannel::bec(0.5), 1.0), 0.41504, 1e-5));
  CHECK(near(e0(BimsChannel::bsc(0.0), 1.0), 1.0, 1e-12));
}

TEST_CASE("f_rho matches the decomposition route on the rho grid") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    for (double rho : {-0.9, -0.5, 0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(seed);
      CAPTURE(rho);
      CHECK(near(f_rho(ch, rho), f_rho_via_decomposition(ch, rho), 1e-10));
    }
  }
}

TEST_CASE("f_rho is non-increasing in rho and respects the range split") {
  const double grid[] = {-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 10.0};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    double prev = 2.0 + 1e-12;
    for (double rho : grid) {
      CAPTURE(seed);
      CAPTURE(rho);
      const double f = f_rho(ch, rho);
      CHECK(f <= prev + 1e-12);
      if (rho <= 0.0) {
        CHECK(f >= 1.0 - 1e-12);
        CHECK(f <= 2.0 + 1e-12);
      } else {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
      }
      prev = f;
    }
  }
}

TEST_CASE("F approaches 2 at the rho -> -1 boundary for the noiseless BSC") {
  // lim F = sum_y max_x P(y|x), equal to 2 exactly for BSC(0).
  CHECK(near(f_rho(BimsChannel::bsc(0.0), -1.0 + 1e-4), 2.0, 0.01));
  CHECK(near(f_limit_rho_to_minus_one(BimsChannel::bsc(0.0)), 2.0, 1e-15));
  CHECK(near(f_limit_rho_to_minus_one(BimsChannel::bec(0.5)), 1.5, 1e-15));
  CHECK(near(f_limit_rho_to_minus_one(BimsChannel::bsc(0.3)), 1.4, 1e-15));
}

TEST_CASE("f_rho_s literal-sum agreement and spot values") {
  const BimsChannel bec = BimsChannel::bec(0.5);
  CHECK(near(f_rho_s(bec, 0.0, 0.7), 1.0, 1e-12));
  CHECK(near(f_rho_s(bec, 1.0, 1.0), 0.75, 1e-12));
  CHECK(near(f_rho_s(bec, 1.0, 1.0), f_rho_s_literal(bec, 1.0, 1.0), 1e-13));
  const BimsChannel mix = random_bims(11, 5);
  for (double rho : {0.25, 1.0, 2.0}) {
    for (double s : {0.3, 1.0, 1.7}) {
      CAPTURE(rho);
      CAPTURE(s);
      CHECK(near(f_rho_s(mix, rho, s), f_rho_s_literal(mix, rho, s), 1e-12));
    }
  }
}

TEST_CASE("f_rho_s collapses to f_rho at s = 1/(1+rho)") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    for (double rho : {-0.5, 0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(seed);
      CAPTURE(rho);
      CHECK(near(f_rho_s(ch, rho, 1.0 / (1.0 + rho)), f_rho(ch, rho), 1e-12));
    }
  }
  const BimsChannel bsc = BimsChannel::bsc(0.11);
  CHECK(near(f_rho_s(bsc, 1.0, 0.5), f_rho(bsc, 1.0), 1e-12));
}

TEST_CASE("bhattacharyya parameter") {
  CHECK(near(bhattacharyya(BimsChannel::bsc(0.0)), 0.0, 1e-15));
  for (double e : {0.1, 0.5, 0.9})
    CHECK(near(bhattacharyya(BimsChannel::bec(e)), e, 1e-13));
  CHECK(near(bhattacharyya(BimsChannel::bsc(kEpsHalfCap)),
             2.0 * std::sqrt(kEpsHalfCap * (1.0 - kEpsHalfCap)), 1e-13));
  CHECK(near(bhattacharyya(BimsChannel::bsc(kEpsHalfCap)), 0.62585, 1e-4));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    CHECK(near(bhattacharyya(ch), 2.0 * f_rho(ch, 1.0) - 1.0, 1e-12));
  }
}

TEST_CASE("cutoff rate") {
  CHECK(near(cutoff_rate(BimsChannel::bsc(0.0)), 1.0, 1e-12));
  CHECK(near(cutoff_rate(BimsChannel::bec(0.5)), 0.41504, 1e-5));
  CHECK(near(cutoff_rate(BimsChannel::bec(1.0)), 0.0, 1e-12));
}

TEST_CASE("e0_derivative equals capacity at rho = 0") {
  for (const auto& ch : {BimsChannel::bec(0.5), BimsChannel::bsc(0.11),
                         random_bims(3, 6), random_bims(19, 4)}) {
    CHECK(near(e0_derivative(ch, 0.0), capacity(ch), 1e-6));
  }
}

TEST_CASE("e0_derivative spot values") {
  CHECK(near(e0_derivative(BimsChannel::bec(0.5), 1.0), bec_e0_prime(1.0, 0.5), 1e-4));
  CHECK(near(e0_derivative(BimsChannel::bec(0.5), 1.0), 0.3333, 1e-4));
  for (double rho : {0.2, 1.0, 3.0})
    CHECK(near(e0_derivative(BimsChannel::bsc(0.0), rho), 1.0, 1e-9));
  // derivative remains evaluable hard against the rho floor
  CHECK(std::isfinite(e0_derivative(BimsChannel::bec(0.5), kMinRho)));
}

TEST_CASE("dispersion spot values") {
  CHECK(near(dispersion(BimsChannel::bsc(0.0)), 0.0, 1e-12));
  CHECK(near(dispersion(BimsChannel::bec(0.5)), 0.25, 1e-6));
  // variance oracle for the BSC: e(1-e) log2((1-e)/e)^2
  const double e = kEpsHalfCap;
  const double oracle = e * (1.0 - e) * std::pow(std::log2((1.0 - e) / e), 2);
  CHECK(near(dispersion(BimsChannel::bsc(e)), oracle, 1e-12));
  CHECK(near(dispersion(BimsChannel::bsc(e)), 0.8908, 1e-3));
  for (double eps : {0.1, 0.3, 0.7, 0.9}) {
    const double c = 1.0 - eps;
    CHECK(near(dispersion(BimsChannel::bec(eps)), c * (1.0 - c), 1e-12));
  }
}

TEST_CASE("central absolute moments and the Minkowski bound") {
  CHECK(near(central_abs_moment(BimsChannel::bsc(0.0), 3), 0.0, 1e-15));
  CHECK(near(central_abs_moment(BimsChannel::bec(0.5), 2),
             dispersion(BimsChannel::bec(0.5)), 1e-13));
  const double ln2 = std::log(2.0);
  const double bound3 = std::pow(2.0 + (3.0 / ln2) * (1.0 + std::cbrt(2.0)), 3);
  CHECK(near(bound3, 1635.1625, 1e-3));  // frozen from the closed form
  CHECK(central_abs_moment(BimsChannel::bsc(0.11), 3) <= bound3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    for (int k : {2, 3, 4}) {
      const double bound =
          std::pow(2.0 + (k / ln2) * (1.0 + std::pow(2.0, 1.0 / k)), k);
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(central_abs_moment(ch, k) <= bound);
    }
  }
}

TEST_CASE("third derivative of E0(rho, 1) at 0 sits within the bound") {
  const double ln2 = std::log(2.0);
  const double bound =
      ln2 * ln2 * std::pow(2.0 + (3.0 / ln2) * (1.0 + std::cbrt(2.0)), 3);
  CHECK(near(bound, 785.6188, 1e-3));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    const double h = 1e-2;
    const auto f = [&](double r) { return e0_s(ch, r, 1.0); };
    const double d3 =
        (f(2 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2 * h)) / (2.0 * h * h * h);
    CAPTURE(seed);
    CHECK(std::isfinite(d3));
    CHECK(std::abs(d3) <= bound);
  }
}

TEST_CASE("second derivative of E0 agrees between F(rho) and F(rho, 1)") {
  const double h = 1e-3;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    const double via_f = (e0(ch, h) - 2.0 * e0(ch, 0.0) + e0(ch, -h)) / (h * h);
    const double via_f1 =
        (e0_s(ch, h, 1.0) - 2.0 * e0_s(ch, 0.0, 1.0) + e0_s(ch, -h, 1.0)) / (h * h);
    CAPTURE(seed);
    CHECK(near(via_f, via_f1, 1e-4));
  }
}

TEST_CASE("gallager_report is internally consistent") {
  const BimsChannel ch = BimsChannel::bsc(0.11);
  const GallagerReport report = gallager_report(ch, {0.5, 1.0, 2.0});
  CHECK(near(report.capacity, 1.0 - binary_entropy(0.11), 1e-12));
  CHECK(near(report.z, 2.0 * report.f1 - 1.0, 1e-12));
  CHECK(near(report.r0, -std::log2(report.f1), 1e-12));
  REQUIRE(report.e0_at.size() == 3);
  CHECK(report.e0_at[1].first == 1.0);
  CHECK(near(report.e0_at[1].second, report.r0, 1e-12));
  CHECK(near(report.dispersion, dispersion(ch), 1e-15));
}
