#include <cmath>

#include "bims/exponents.hpp"
#include "bims/extremes.hpp"
#include "bims/gallager.hpp"
#include "bims/verify.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace bims;
using testutil::near;

namespace {

const double kRhoGrid[] = {-0.9, -0.5, 0.5, 1.0, 2.0, 10.0};
const double kRateFracs[] = {0.0, 0.4, 0.8};
const int kMoments[] = {2, 3, 4};

// Literal evaluation of the concavity factor, usable away from z = 1.
double g_literal(double z, double rho) {
  const double a = 1.0 / (1.0 + rho);
  const double b = rho / (1.0 + rho);
  return b + (1.0 - z + std::pow(z, a) - std::pow(z, b)) / ((1.0 + z) * std::log(z));
}

}  // namespace

TEST_CASE("random_bims is deterministic in the seed") {
  const BimsChannel a = random_bims(12345, 8);
  const BimsChannel b = random_bims(12345, 8);
  CHECK(channel_spec_json(a) == channel_spec_json(b));
  CHECK(channel_spec_json(a) != channel_spec_json(random_bims(12346, 8)));
}

TEST_CASE("random_bims with one subchannel is a plain BSC") {
  const BimsChannel ch = random_bims(77, 1);
  const auto dec = decompose(ch);
  REQUIRE(dec.entries.size() == 1);
  CHECK(near(dec.entries[0].mass, 1.0, 1e-12));
  CHECK(dec.entries[0].crossover <= 0.5);
}

TEST_CASE("random_bims channels expand to symmetric matrices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BimsChannel ch = random_bims(seed, 8);
    const std::vector<std::vector<double>> rows{
        {ch.row(0).begin(), ch.row(0).end()}, {ch.row(1).begin(), ch.row(1).end()}};
    CHECK_NOTHROW(validate_symmetry(rows));
    double sum = 0.0;
    for (const auto& c : ch.components()) sum += c.weight;
    CHECK(near(sum, 1.0, 1e-12));
  }
}

TEST_CASE("concavity factor vanishes identically at rho = 0") {
  for (int i = 1; i <= 1000; ++i) {
    const double z = i * 1e-3;
    CHECK(std::abs(bsc_concavity_factor(z, 0.0)) <= 1e-12);
  }
}

TEST_CASE("concavity factor agrees with the literal form away from z = 1") {
  // relative comparison: g reaches ~1e17 at strongly negative rho
  for (double rho : {-0.9, -0.5, 0.5, 1.0, 5.0, 50.0}) {
    for (double z : {0.01, 0.1, 0.35, 0.7, 0.9, 0.98}) {
      CAPTURE(rho);
      CAPTURE(z);
      const double got = bsc_concavity_factor(z, rho);
      const double want = g_literal(z, rho);
      CHECK(std::abs(got - want) <= 1e-11 * std::max({1.0, std::abs(got), std::abs(want)}));
    }
  }
}

TEST_CASE("concavity factor z -> 1 limit is tiny for all rho") {
  for (double rho : {-0.99, -0.5, 0.1, 1.0, 5.0, 50.0}) {
    CAPTURE(rho);
    CHECK(std::abs(bsc_concavity_factor(1.0, rho)) <= 1e-10);
    CHECK(bsc_concavity_factor(1.0, rho) >= -1e-12);
  }
}

TEST_CASE("concavity factor is non-negative on a spot grid") {
  for (double rho : {-0.99, -0.25, 0.5, 2.0, 20.0}) {
    for (int i = 1; i <= 100; ++i) {
      const double z = i * 0.01;
      CAPTURE(rho);
      CAPTURE(z);
      CHECK(bsc_concavity_factor(z, rho) >= -1e-12);
    }
  }
}

TEST_CASE("all checks pass at reduced trial counts") {
  CHECK(check_theorem1(60, kRhoGrid, 42).passed);
  CHECK(check_lemma1(kRhoGrid, 0.01).passed);
  CHECK(check_lemma3(40, kMoments, 42).passed);
  CHECK(check_two_path(40, kRhoGrid, 42).passed);
  CHECK(check_exponent_extremes(10, kRateFracs, 42).passed);
  CHECK(check_dispersion_extremes(60, 42).passed);
}

TEST_CASE("checks are deterministic given the seed") {
  const CheckReport a = check_theorem1(40, kRhoGrid, 7);
  const CheckReport b = check_theorem1(40, kRhoGrid, 7);
  CHECK(a.max_violation == b.max_violation);
  CHECK(a.worst_case == b.worst_case);
  const CheckReport reports_a[] = {a};
  const CheckReport reports_b[] = {b};
  CHECK(check_reports_json(reports_a) == check_reports_json(reports_b));
}

TEST_CASE("theorem1 worst case replays to the reported violation") {
  const CheckReport report = check_theorem1(60, kRhoGrid, 42);
  REQUIRE(!report.worst_case.empty());
  // worst_case carries the channel spec, rho, and which part tripped
  const auto doc = nlohmann::json::parse(report.worst_case);
  const BimsChannel ch = channel_from_spec(doc.at("channel").dump());
  const double rho = doc.at("rho").get<double>();
  const double c = capacity(ch);
  const double f = f_rho(ch, rho);
  double violation;
  if (doc.at("part") == "sandwich") {
    violation = std::max(f_bec_of_c(rho, c) - f, f - f_bsc_of_c(rho, c));
  } else {
    const double c_bec = c_of_f_bec(f, rho);
    const double c_bsc = c_of_f_bsc(f, rho);
    violation = rho > 0.0 ? std::max(c_bec - c, c - c_bsc)
                          : std::max(c_bsc - c, c - c_bec);
  }
  CHECK(near(violation, report.max_violation, 1e-15));
}

TEST_CASE("tightness at the extremal channels themselves") {
  for (double eps : {0.0, 0.11, 0.3, 0.5}) {
    const BimsChannel bsc = BimsChannel::bsc(eps);
    const BimsChannel bec = BimsChannel::bec(eps);
    for (double rho : kRhoGrid) {
      CAPTURE(eps);
      CAPTURE(rho);
      CHECK(near(f_rho(bsc, rho), f_bsc_of_c(rho, capacity(bsc)), 1e-12));
      CHECK(near(f_rho(bec, rho), f_bec_of_c(rho, capacity(bec)), 1e-12));
    }
  }
}

TEST_CASE("run_check dispatches and rejects unknown names") {
  const CheckReport r = run_check("two_path", 42, 10);
  CHECK(r.name == "two_path");
  CHECK(r.trials == 10);
  CHECK(r.passed);
  CHECK_THROWS_AS(run_check("bogus", 42, 10), DomainError);
}

TEST_CASE("report JSON carries every field") {
  const CheckReport r = check_dispersion_extremes(20, 42);
  const CheckReport reports[] = {r};
  const auto doc = nlohmann::json::parse(check_reports_json(reports));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("name") == "dispersion_extremes");
  CHECK(doc[0].at("trials") == 20);
  CHECK(doc[0].at("passed") == true);
  CHECK(doc[0].at("tolerance").get<double>() == 1e-3);
  CHECK(doc[0].contains("max_violation"));
  CHECK(doc[0].contains("worst_case"));
}
