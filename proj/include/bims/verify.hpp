#ifndef BIMS_VERIFY_HPP
#define BIMS_VERIFY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bims/channel.hpp"

namespace bims {

/// Fixed-algorithm 64-bit generator so that seeded runs are reproducible
/// across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct CheckReport {
  std::string name;
  long trials = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;
  std::string worst_case;  // JSON text replaying the worst input
  bool passed = false;
};

/// Random BSC mixture, deterministic in seed: k in [1, max_subchannels]
/// subchannels, Dirichlet(1,..,1) weights, crossovers uniform on [0, 1/2].
BimsChannel random_bims(std::uint64_t seed, int max_subchannels);

/// Sign-determining factor of d^2 F_bsc/dC^2 in the variable
/// z = eps/(1-eps):
///   g(z, rho) = rho/(1+rho) + (1 - z + z^(1/(1+rho)) - z^(rho/(1+rho)))
///               / ((1+z) ln z).
/// The 0/0 form at z = 1 is resolved by a one-sided numeric limit; near
/// z = 1 the numerator is assembled from expm1 terms to dodge the
/// catastrophic cancellation of the direct expression.
double bsc_concavity_factor(double z, double rho);

CheckReport check_theorem1(int trials, std::span<const double> rho_grid,
                           std::uint64_t seed);
CheckReport check_lemma1(std::span<const double> rho_grid, double c_step);
CheckReport check_lemma3(int trials, std::span<const int> k_set, std::uint64_t seed);
CheckReport check_two_path(int trials, std::span<const double> rho_grid,
                           std::uint64_t seed);
CheckReport check_exponent_extremes(int trials, std::span<const double> rate_fracs,
                                    std::uint64_t seed);
CheckReport check_dispersion_extremes(int trials, std::uint64_t seed);

/// All checks with their standard grids. trials_override > 0 replaces
/// each check's default trial count.
std::vector<CheckReport> run_all_checks(std::uint64_t seed, int trials_override = 0);

std::vector<std::string> check_names();
CheckReport run_check(const std::string& name, std::uint64_t seed,
                      int trials_override = 0);

std::string check_reports_json(std::span<const CheckReport> reports);

}  // namespace bims

#endif  // BIMS_VERIFY_HPP
