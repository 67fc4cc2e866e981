#include <algorithm>
#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/geometry.hpp"
#include "line_search.hpp"

namespace hadamard {

namespace {

double max_distance(const Space& space, const Point& c, std::span<const Point> window) {
  double r = 0.0;
  for (const auto& w : window) r = std::max(r, space.distance(c, w));
  return r;
}

}  // namespace

AsymptoticCenter estimate_asymptotic_center(const Space& space, std::span<const Point> window, double tol) {
  if (window.empty()) throw DomainError("asymptotic center of an empty window");
  for (const auto& w : window) space.require(w);
  if (window.size() == 1) return {window[0], 0.0, 0, true};

  // Non-owning handle: the problem only lives for the seed solve.
  const SpaceHandle handle(std::shared_ptr<const Space>{}, &space);
  Point c = karcher_mean(FrechetProblem::uniform(handle, {window.begin(), window.end()})).mean;
  double r = max_distance(space, c, window);

  std::size_t iter = 0;
  double step = 1.0;
  for (; iter < 10000; ++iter) {
    std::vector<const Point*> active;
    for (const auto& w : window) {
      if (space.distance(c, w) >= r - std::max(1e-9, 1e-3 * r)) active.push_back(&w);
    }
    std::vector<Point> targets;
    for (auto* a : active) targets.push_back(*a);
    if (active.size() <= 16) {
      for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j)
          targets.push_back(space.geodesic_point(*active[i], *active[j], 0.5));
    }
    Point best = c;
    double best_r = r;
    for (const auto& target : targets) {
      auto along = [&](double t) { return max_distance(space, space.geodesic_point(c, target, t), window); };
      const auto [t, value] = detail::golden_minimize(along, 0.0, step, 1e-14);
      if (value < best_r) {
        best_r = value;
        best = space.geodesic_point(c, target, t);
      }
    }
    const double improvement = r - best_r;
    if (improvement > 0.0) {
      c = std::move(best);
      r = best_r;
    }
    if (improvement < tol) {
      if (step < 1e-6) break;
      step *= 0.5;
    }
  }
  return {std::move(c), r, iter, true};
}

}  // namespace hadamard
