#include "bims/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "bims/exponents.hpp"
#include "bims/extremes.hpp"
#include "bims/gallager.hpp"
#include "json.hpp"

namespace bims {

namespace {

using nlohmann::json;

constexpr int kMaxSubchannels = 8;

unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BIMS_EXTREMES_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v < static_cast<long>(hw)) hw = static_cast<unsigned>(v);
  }
  return hw;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t trial) {
  SplitMix64 g(seed ^ (salt * 0xA24BAED4963EE407ull) ^
               (trial * 0x9E3779B97F4A7C15ull));
  return g.next();
}

struct TrialResult {
  double violation = -std::numeric_limits<double>::infinity();
  std::string worst;
};

/// Trials are independent (each derives its own seed), so they can be
/// spread over threads; results land in a trial-indexed vector and the
/// reduction below is order-fixed regardless of scheduling.
template <typename Fn>
std::vector<TrialResult> run_trials(int trials, Fn&& per_trial) {
  std::vector<TrialResult> results(static_cast<std::size_t>(std::max(trials, 0)));
  if (trials <= 0) return results;
  const unsigned workers =
      std::min<unsigned>(thread_budget(), static_cast<unsigned>(trials));
  if (workers <= 1) {
    for (int i = 0; i < trials; ++i) results[i] = per_trial(i);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          results[i] = per_trial(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

CheckReport make_report(std::string name, long trials, double tolerance,
                        const std::vector<TrialResult>& results) {
  CheckReport report;
  report.name = std::move(name);
  report.trials = trials;
  report.tolerance = tolerance;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (const TrialResult& r : results) {
    if (r.violation > report.max_violation) {
      report.max_violation = r.violation;
      report.worst_case = r.worst;
    }
  }
  if (results.empty()) report.max_violation = 0.0;
  report.passed = report.max_violation <= tolerance;
  return report;
}

json channel_json(const BimsChannel& ch) { return json::parse(channel_spec_json(ch)); }

void track(TrialResult& out, double violation, const json& context) {
  if (violation > out.violation) {
    out.violation = violation;
    out.worst = context.dump();
  }
}

// Grid for the g(z, rho) non-negativity scan: 20 values spanning the
// admissible range from just above -1 up to 50.
constexpr double kGRhoGrid[20] = {-0.99, -0.9, -0.75, -0.5, -0.25, -0.1, 0.0,
                                  0.1,   0.25, 0.5,   0.75, 1.0,   1.5,  2.0,
                                  3.0,   5.0,  10.0,  20.0, 35.0,  50.0};

}  // namespace

BimsChannel random_bims(std::uint64_t seed, int max_subchannels) {
  if (max_subchannels < 1) throw DomainError("random_bims needs max_subchannels >= 1");
  SplitMix64 rng(seed);
  const int k =
      1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_subchannels));
  std::vector<MixtureComponent> comps(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& c : comps) {
    c.weight = -std::log(1.0 - rng.next_unit());  // Exp(1) gives Dirichlet(1,...,1)
    total += c.weight;
  }
  if (total <= 0.0) {
    for (auto& c : comps) c.weight = 1.0;
    total = static_cast<double>(k);
  }
  for (auto& c : comps) c.weight /= total;
  for (auto& c : comps) c.crossover = 0.5 * rng.next_unit();
  return BimsChannel::mixture(std::move(comps));
}

double bsc_concavity_factor(double z, double rho) {
  require_valid_rho(rho);
  if (!(z > 0.0 && z <= 1.0))
    throw DomainError("bsc_concavity_factor needs z in (0, 1]");
  const double a = 1.0 / (1.0 + rho);
  const double b = rho / (1.0 + rho);
  // Numerator 1 - e^w + e^{aw} - e^{bw} assembled from expm1 pieces; the
  // direct form loses everything to cancellation as z -> 1.
  const auto tail = [&](double w) {
    const double num = -std::expm1(w) + std::exp(b * w) * std::expm1((a - b) * w);
    const double den = (1.0 + std::exp(w)) * w;
    return num / den;
  };
  // z = 1 is a 0/0 form; a one-sided numeric limit stands in for it.
  const double w = (z == 1.0) ? -1e-9 : std::log(z);
  return b + tail(w);
}

CheckReport check_theorem1(int trials, std::span<const double> rho_grid,
                           std::uint64_t seed) {
  std::vector<double> rhos(rho_grid.begin(), rho_grid.end());
  auto results = run_trials(trials, [&, rhos](int trial) {
    const std::uint64_t s = mix_seed(seed, 1, static_cast<std::uint64_t>(trial));
    const BimsChannel ch = random_bims(s, kMaxSubchannels);
    const double c = capacity(ch);
    const json ch_json = channel_json(ch);
    TrialResult out;
    for (double rho : rhos) {
      const double f = f_rho(ch, rho);
      const double lo = f_bec_of_c(rho, c);
      const double hi = f_bsc_of_c(rho, c);
      track(out, std::max(lo - f, f - hi),
            {{"trial", trial}, {"channel", ch_json}, {"rho", rho}, {"part", "sandwich"}});
      if (rho != 0.0) {
        const double c_bec = c_of_f_bec(f, rho);
        const double c_bsc = c_of_f_bsc(f, rho);
        const double v = rho > 0.0 ? std::max(c_bec - c, c - c_bsc)
                                   : std::max(c_bsc - c, c - c_bec);
        track(out, v,
              {{"trial", trial},
               {"channel", ch_json},
               {"rho", rho},
               {"part", "capacity_direction"}});
      }
    }
    return out;
  });
  return make_report("theorem1", trials, 1e-9, results);
}

CheckReport check_lemma1(std::span<const double> rho_grid, double c_step) {
  if (!(c_step > 0.0 && c_step < 0.5)) throw DomainError("check_lemma1 needs 0 < c_step < 1/2");
  TrialResult out;
  long evaluations = 0;

  // (a) Concavity and monotonicity of the capacity-parametrized
  // envelopes, by raw finite differences on the C grid.
  for (double rho : rho_grid) {
    const int n = static_cast<int>(std::floor(1.0 / c_step)) - 1;
    for (int i = 1; i <= n; ++i) {
      const double c = i * c_step;
      const double f_prev = f_bsc_of_c(rho, std::max(0.0, c - c_step));
      const double f_here = f_bsc_of_c(rho, c);
      const double f_next = f_bsc_of_c(rho, std::min(1.0, c + c_step));
      const double d2 = f_prev - 2.0 * f_here + f_next;
      track(out, d2 - 1e-6, {{"rho", rho}, {"c", c}, {"part", "concavity"}});
      const double mono = rho >= 0.0 ? f_next - f_here : f_here - f_next;
      track(out, mono - 1e-12, {{"rho", rho}, {"c", c}, {"part", "bsc_monotonicity"}});
      const double bec_step = rho >= 0.0
                                  ? f_bec_of_c(rho, c + c_step) - f_bec_of_c(rho, c)
                                  : f_bec_of_c(rho, c) - f_bec_of_c(rho, c + c_step);
      track(out, bec_step - 1e-12, {{"rho", rho}, {"c", c}, {"part", "bec_monotonicity"}});
      const double chord = f_bec_of_c(rho, c) - f_here;
      track(out, chord - 1e-12, {{"rho", rho}, {"c", c}, {"part", "chord"}});
      evaluations += 4;
    }
  }

  // (b) Non-negativity of the second-derivative factor g(z, rho) on the
  // fixed 1000 x 20 grid, z = 1 included through its limit.
  for (double rho : kGRhoGrid) {
    for (int i = 1; i <= 1000; ++i) {
      const double z = i * 1e-3;
      const double g = bsc_concavity_factor(z, rho);
      track(out, (-g) - 1e-12, {{"rho", rho}, {"z", z}, {"part", "g_nonnegative"}});
      ++evaluations;
    }
  }

  // Violations are normalized as excess over each part's own tolerance.
  return make_report("lemma1", evaluations, 0.0, {out});
}

CheckReport check_lemma3(int trials, std::span<const int> k_set, std::uint64_t seed) {
  std::vector<int> ks(k_set.begin(), k_set.end());
  const double ln2 = std::log(2.0);
  // (ln 2)^2 (2 + (3/ln2)(1 + 2^(1/3)))^3, the third-derivative bound.
  const double moment3_bound =
      std::pow(2.0 + (3.0 / ln2) * (1.0 + std::cbrt(2.0)), 3);
  const double third_derivative_bound = ln2 * ln2 * moment3_bound;

  auto results = run_trials(trials, [&, ks](int trial) {
    const std::uint64_t s = mix_seed(seed, 3, static_cast<std::uint64_t>(trial));
    const BimsChannel ch = random_bims(s, kMaxSubchannels);
    const json ch_json = channel_json(ch);
    TrialResult out;
    for (int k : ks) {
      const double moment = central_abs_moment(ch, k);
      const double bound =
          std::pow(2.0 + (k / ln2) * (1.0 + std::pow(2.0, 1.0 / k)), k);
      track(out, moment - bound,
            {{"trial", trial}, {"channel", ch_json}, {"k", k}, {"part", "moment_bound"}});
    }
    // Third derivative of E0(rho, 1) at 0 must be finite and within the
    // Minkowski-derived bound.
    const double h = 1e-2;
    const auto f = [&](double r) { return e0_s(ch, r, 1.0); };
    const double d3 =
        (f(2 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2 * h)) / (2.0 * h * h * h);
    const double v = std::isfinite(d3)
                         ? std::abs(d3) - third_derivative_bound
                         : std::numeric_limits<double>::infinity();
    track(out, v,
          {{"trial", trial}, {"channel", ch_json}, {"part", "third_derivative"}});
    return out;
  });
  return make_report("lemma3", trials, 0.0, results);
}

CheckReport check_two_path(int trials, std::span<const double> rho_grid,
                           std::uint64_t seed) {
  std::vector<double> rhos(rho_grid.begin(), rho_grid.end());
  auto results = run_trials(trials, [&, rhos](int trial) {
    const std::uint64_t s = mix_seed(seed, 4, static_cast<std::uint64_t>(trial));
    SplitMix64 rng(s);
    const BimsChannel channels[3] = {
        random_bims(rng.next(), kMaxSubchannels),
        BimsChannel::bsc(0.5 * rng.next_unit()),
        BimsChannel::bec(rng.next_unit()),
    };
    TrialResult out;
    for (const BimsChannel& ch : channels) {
      const json ch_json = channel_json(ch);
      for (double rho : rhos) {
        const double direct = f_rho(ch, rho);
        const double decomposed = f_rho_via_decomposition(ch, rho);
        track(out, std::abs(direct - decomposed),
              {{"trial", trial}, {"channel", ch_json}, {"rho", rho}});
      }
    }
    return out;
  });
  return make_report("two_path", trials, 1e-10, results);
}

CheckReport check_exponent_extremes(int trials, std::span<const double> rate_fracs,
                                    std::uint64_t seed) {
  std::vector<double> fracs(rate_fracs.begin(), rate_fracs.end());
  constexpr ExponentKind kBelowCapacity[] = {
      ExponentKind::RandomCoding, ExponentKind::SpherePacking,
      ExponentKind::Expurgated, ExponentKind::Gfb, ExponentKind::Dtb};
  constexpr double kAboveCapacityFracs[] = {1.1, 1.5};

  auto results = run_trials(trials, [&, fracs](int trial) {
    const std::uint64_t s = mix_seed(seed, 5, static_cast<std::uint64_t>(trial));
    const BimsChannel ch = random_bims(s, kMaxSubchannels);
    const double c = capacity(ch);
    const json ch_json = channel_json(ch);
    TrialResult out;
    for (ExponentKind kind : kBelowCapacity) {
      for (double frac : fracs) {
        const double rate = frac * c;
        const double value = evaluate_exponent(kind, ch, rate).value;
        const EnvelopePair env = exponent_envelope(kind, c, rate);
        track(out, std::max(env.lower - value, value - env.upper),
              {{"trial", trial},
               {"channel", ch_json},
               {"kind", exponent_kind_name(kind)},
               {"rate", rate}});
      }
    }
    for (double frac : kAboveCapacityFracs) {
      const double rate = frac * c;
      const double value = strong_converse(ch, rate).value;
      const EnvelopePair env = exponent_envelope(ExponentKind::StrongConverse, c, rate);
      track(out, std::max(env.lower - value, value - env.upper),
            {{"trial", trial},
             {"channel", ch_json},
             {"kind", "strong_converse"},
             {"rate", rate}});
    }
    return out;
  });
  return make_report("exponent_extremes", trials, 1e-7, results);
}

CheckReport check_dispersion_extremes(int trials, std::uint64_t seed) {
  auto results = run_trials(trials, [&](int trial) {
    const std::uint64_t s = mix_seed(seed, 6, static_cast<std::uint64_t>(trial));
    const BimsChannel ch = random_bims(s, kMaxSubchannels);
    const double c = capacity(ch);
    const double v = dispersion(ch);
    const double v_bec = c * (1.0 - c);
    const double v_bsc = dispersion(BimsChannel::bsc(binary_entropy_inv(1.0 - c)));
    TrialResult out;
    track(out, std::max(v_bec - v, v - v_bsc),
          {{"trial", trial}, {"channel", channel_json(ch)}, {"capacity", c}});
    return out;
  });
  return make_report("dispersion_extremes", trials, 1e-3, results);
}

namespace {

constexpr double kRhoGridDefault[6] = {-0.9, -0.5, 0.5, 1.0, 2.0, 10.0};
constexpr int kMomentOrders[3] = {2, 3, 4};
constexpr double kRateFracsDefault[5] = {0.0, 0.2, 0.4, 0.6, 0.8};

int pick(int trials_override, int fallback) {
  return trials_override > 0 ? trials_override : fallback;
}

}  // namespace

std::vector<std::string> check_names() {
  return {"theorem1", "lemma1",            "lemma3",
          "two_path", "exponent_extremes", "dispersion_extremes"};
}

CheckReport run_check(const std::string& name, std::uint64_t seed, int trials_override) {
  if (name == "theorem1")
    return check_theorem1(pick(trials_override, 500), kRhoGridDefault, seed);
  if (name == "lemma1") return check_lemma1(kRhoGridDefault, 0.01);
  if (name == "lemma3")
    return check_lemma3(pick(trials_override, 200), kMomentOrders, seed);
  if (name == "two_path")
    return check_two_path(pick(trials_override, 200), kRhoGridDefault, seed);
  if (name == "exponent_extremes")
    return check_exponent_extremes(pick(trials_override, 100), kRateFracsDefault, seed);
  if (name == "dispersion_extremes")
    return check_dispersion_extremes(pick(trials_override, 300), seed);
  throw DomainError("unknown check '" + name + "'");
}

std::vector<CheckReport> run_all_checks(std::uint64_t seed, int trials_override) {
  std::vector<CheckReport> reports;
  for (const std::string& name : check_names())
    reports.push_back(run_check(name, seed, trials_override));
  return reports;
}

std::string check_reports_json(std::span<const CheckReport> reports) {
  json arr = json::array();
  for (const CheckReport& r : reports) {
    json worst = r.worst_case.empty() ? json() : json::parse(r.worst_case);
    arr.push_back({{"name", r.name},
                   {"trials", r.trials},
                   {"tolerance", r.tolerance},
                   {"max_violation", r.max_violation},
                   {"worst_case", std::move(worst)},
                   {"passed", r.passed}});
  }
  return arr.dump(2);
}

}  // namespace bims
