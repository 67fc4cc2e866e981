#pragma once

#include <cmath>
#include <utility>

namespace hadamard::detail {

/// Golden-section search for the minimizer of a convex function on [lo, hi].
/// Endpoints are compared explicitly so minima on the boundary are exact.
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double x_tol = 1e-15,
                                          int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > x_tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc <= fd) {
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
  double best_x = fc <= fd ? c : d;
  double best_f = fc <= fd ? fc : fd;
  const double f_lo = f(lo);
  if (f_lo <= best_f) {
    best_x = lo;
    best_f = f_lo;
  }
  const double f_hi = f(hi);
  if (f_hi < best_f) {
    best_x = hi;
    best_f = f_hi;
  }
  return {best_x, best_f};
}

}  // namespace hadamard::detail
