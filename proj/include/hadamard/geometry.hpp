#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hadamard/convex_set.hpp"
#include "hadamard/space.hpp"
#include "hadamard/violation.hpp"

namespace hadamard {

/// Tolerance ladder shared by every module.
namespace tolerance {
inline constexpr double identity = 1e-10;     // algebraic identities
inline constexpr double contract = 1e-9;      // geodesic / projection contracts
inline constexpr double certificate = 1e-6;   // iterative-solver certificates
}  // namespace tolerance

inline double distance(const Space& space, const Point& a, const Point& b) {
  return space.distance(a, b);
}

inline Point geodesic_point(const Space& space, const Point& a, const Point& b, double t) {
  return space.geodesic_point(a, b, t);
}

/// Quasi-inner product <ab, cd> = (d^2(a,d) + d^2(b,c) - d^2(a,c) - d^2(b,d)) / 2.
double quasi_inner(const Space& space, const Point& a, const Point& b, const Point& c,
                   const Point& d);

/// d^2(y, x_t) <= (1-t) d^2(y, x0) + t d^2(y, x1) - t(1-t) d^2(x0, x1) on random (x0, x1, y, t).
/// Witness: {x0, x1, y}, params {t}.
ViolationReport check_cat0_sample(const Space& space, std::uint64_t seed, std::size_t n_samples,
                                  double tol);

/// <ab, cd> <= d(a,b) d(c,d) on random 4-tuples. Witness: {a, b, c, d}.
ViolationReport check_cauchy_schwarz_sample(const Space& space, std::uint64_t seed,
                                            std::size_t n_samples, double tol);

/// The three quasi-inner identities (symmetry, antisymmetry, additivity) on
/// random 5-tuples; each sample contributes the largest of the three residuals.
ViolationReport check_quasi_inner_identities(const Space& space, std::uint64_t seed,
                                             std::size_t n_samples, double tol);

/// Admissible quadruples x, y, p, q with d(p,x) <= d(x,q) and d(p,y) <= d(y,q);
/// every m = [x,y](i / (t_grid - 1)) must satisfy d(p,m) <= d(m,q).
/// Witness: {x, y, p, q}, params {t}.
ViolationReport check_q4bar_sample(const Space& space, std::uint64_t seed,
                                   std::size_t n_samples, double tol, std::size_t t_grid = 17);

/// Same check on caller-supplied quadruples (admissibility is not re-checked).
ViolationReport check_q4bar_quadruple(const Space& space, const Point& x, const Point& y,
                                      const Point& p, const Point& q, double tol,
                                      std::size_t t_grid = 17);

/// |d(x_t, x_s) - |t - s| d(a, b)| relative to d(a, b), plus endpoint conditions.
ViolationReport check_geodesic_consistency(const Space& space, std::uint64_t seed,
                                           std::size_t n_samples, double tol);

/// Symmetry, identity and triangle inequality on random triples.
ViolationReport check_metric_axioms(const Space& space, std::uint64_t seed, std::size_t n_samples,
                                    double tol);

/// Metric projection onto `set`; see Space::project.
inline Point project_convex(const Space& space, const ConvexSetSpec& set, const Point& x) {
  return space.project(set, x);
}

/// Draws a point of `set` (unbounded boxes are cut to the sampling window).
Point sample_in_set(const Space& space, const ConvexSetSpec& set, Rng& rng);

/// d^2(x, Px) + d^2(Px, y) <= d^2(x, y) for `n_members` sampled y in the set.
ViolationReport check_projection_inequality(const Space& space, const ConvexSetSpec& set,
                                            const Point& x, std::uint64_t seed,
                                            std::size_t n_members, double tol);

/// d(Px, Px') <= d(x, x') on random pairs.
ViolationReport check_projection_nonexpansive(const Space& space, const ConvexSetSpec& set,
                                              std::uint64_t seed, std::size_t n_pairs,
                                              double tol);

struct AsymptoticCenter {
  Point center;
  double radius = 0.0;
  std::size_t iterations = 0;
  /// Always true: the center is estimated on a finite window, not a limsup.
  bool approximate = true;
};

/// Minimizer of x -> max_i d(x, window_i), seeded at the window's Karcher mean
/// and refined by geodesic descent with shrinking steps until the improvement
/// drops below `tol`.
AsymptoticCenter estimate_asymptotic_center(const Space& space, std::span<const Point> window,
                                            double tol = 1e-9);

}  // namespace hadamard
