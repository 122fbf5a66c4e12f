#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace sqzcool {

struct Bracket {
  double lo = 0.0;
  double best = 0.0;
  double hi = 0.0;
  double best_value = 0.0;
  bool interior = false;  // false when the grid minimum sits on an endpoint
};

/// Uniform scan of f on [lo, hi] with `points` samples; returns the
/// neighbours of the best sample. The first sample wins ties so the result
/// does not depend on evaluation order.
template <typename F>
Bracket bracket_scan(F&& f, double lo, double hi, std::size_t points) {
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best = 0;
  double best_value = f(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    const double value = f(x);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  Bracket out;
  out.best = best + 1 == points ? hi : lo + step * static_cast<double>(best);
  out.best_value = best_value;
  out.lo = best == 0 ? lo : lo + step * static_cast<double>(best - 1);
  out.hi = best + 1 >= points ? hi : lo + step * static_cast<double>(best + 1);
  out.interior = best != 0 && best + 1 != points;
  return out;
}

/// Golden-section search for a minimum of f inside [lo, hi]; stops when the
/// bracket is narrower than tol. Returns the abscissa.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol,
                               int max_iterations = 500) {
  constexpr double kInvPhi = 1.0 / std::numbers::phi;
  double c = hi - (hi - lo) * kInvPhi;
  double d = lo + (hi - lo) * kInvPhi;
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && hi - lo > tol; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * kInvPhi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * kInvPhi;
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

/// Locates the stationary point of a smooth f in [lo, hi] by bisecting the
/// sign of the symmetric difference f(x + h) - f(x - h). Golden section alone
/// stalls near sqrt(machine epsilon) in x; this gets close to full
/// precision once a bracket is known. Returns the midpoint if the difference
/// does not change sign.
template <typename F>
double refine_stationary(F&& f, double lo, double hi, double h,
                         int max_iterations = 200) {
  auto slope = [&](double x) { return f(x + h) - f(x - h); };
  double s_lo = slope(lo);
  const double s_hi = slope(hi);
  if (s_lo * s_hi > 0.0) return 0.5 * (lo + hi);
  for (int i = 0; i < max_iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double s_mid = slope(mid);
    if (s_mid == 0.0) return mid;
    if ((s_mid < 0.0) == (s_lo < 0.0)) {
      lo = mid;
      s_lo = s_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sqzcool
