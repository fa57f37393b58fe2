#ifndef BIMS_SEARCH_HPP
#define BIMS_SEARCH_HPP

#include <cmath>
#include <utility>

namespace bims {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section maximization on [lo, hi] for a unimodal objective.
/// Runs until the bracket is below xtol or max_iter splits have been made.
template <typename F>
ScalarMax golden_section_max(F&& f, double lo, double hi, double xtol = 1e-12,
                             int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

/// Coarse scan to bracket the maximum, then golden-section refinement.
/// The endpoints are always candidates, so boundary optima are not lost
/// even if the objective is only quasi-concave.
template <typename F>
ScalarMax grid_then_golden_max(F&& f, double lo, double hi, int grid_points = 65,
                               double xtol = 1e-12) {
  if (!(hi > lo)) return {lo, f(lo)};
  const int n = grid_points < 3 ? 3 : grid_points;
  int best_i = 0;
  double best_v = -HUGE_VAL;
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = (i == n - 1) ? hi : lo + i * step;
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double bl = (best_i == 0) ? lo : lo + (best_i - 1) * step;
  const double bh = (best_i == n - 1) ? hi : lo + (best_i + 1) * step;
  ScalarMax r = golden_section_max(f, bl, bh, xtol);
  if (best_v > r.value) r = {(best_i == n - 1) ? hi : lo + best_i * step, best_v};
  return r;
}

/// Bisection for a root of f on [lo, hi]; requires f(lo) and f(hi) of
/// opposite (or zero) sign. Returns the midpoint of the final bracket.
template <typename F>
double bisect_root(F&& f, double lo, double hi, int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  for (int i = 0; i < max_iter && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at adjacent doubles
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bims

#endif  // BIMS_SEARCH_HPP
