#include "hadamard/river.hpp"

#include <cmath>

#include "hadamard/error.hpp"

namespace hadamard {

std::array<double, 2> TreePath::at(double s) const {
  if (breakpoints.size() == 1 || s <= 0.0) return breakpoints.front();
  if (s >= length()) return breakpoints.back();
  std::size_t i = 0;
  while (i + 2 < arclength.size() && s > arclength[i + 1]) ++i;
  const double seg = arclength[i + 1] - arclength[i];
  const double u = seg > 0.0 ? (s - arclength[i]) / seg : 0.0;
  const auto& p = breakpoints[i];
  const auto& q = breakpoints[i + 1];
  // Segments are axis-aligned: interpolate the moving coordinate only, so the
  // fixed one stays bit-exact (the metric compares abscissas with ==).
  if (p[0] == q[0]) return {p[0], p[1] + u * (q[1] - p[1])};
  return {p[0] + u * (q[0] - p[0]), p[1]};
}

TreePath river_canonical_path(std::span<const double> a, std::span<const double> b) {
  TreePath path;
  auto push = [&](double x, double y) {
    if (!path.breakpoints.empty()) {
      const auto& last = path.breakpoints.back();
      const double len = last[0] == x ? std::abs(last[1] - y) : std::abs(last[0] - x);
      if (len == 0.0) return;
      path.arclength.push_back(path.arclength.back() + len);
    } else {
      path.arclength.push_back(0.0);
    }
    path.breakpoints.push_back({x, y});
  };
  push(a[0], a[1]);
  if (a[0] != b[0]) {
    push(a[0], 0.0);
    push(b[0], 0.0);
  }
  push(b[0], b[1]);
  return path;
}

RiverPlane::RiverPlane() : Space("river") {}

bool RiverPlane::contains(std::span<const double> coords) const {
  return coords.size() == 2 && std::isfinite(coords[0]) && std::isfinite(coords[1]);
}

double RiverPlane::metric(std::span<const double> a, std::span<const double> b) noexcept {
  if (a[0] == b[0]) return std::abs(a[1] - b[1]);
  return std::abs(a[1]) + std::abs(b[1]) + std::abs(a[0] - b[0]);
}

Point RiverPlane::sample(Rng& rng) const {
  std::uniform_real_distribution<double> u(-kSampleHalfWidth, kSampleHalfWidth);
  const double x = u(rng);
  const double y = u(rng);
  return wrap({x, y});
}

std::pair<Point, Point> RiverPlane::sample_pair(Rng& rng) const {
  Point a = sample(rng);
  Point b = sample(rng);
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) b.coords[0] = a.coords[0];
  return {std::move(a), std::move(b)};
}

double RiverPlane::distance_impl(const Point& a, const Point& b) const {
  return metric(a.coords, b.coords);
}

Point RiverPlane::geodesic_impl(const Point& a, const Point& b, double t) const {
  const TreePath path = river_canonical_path(a.coords, b.coords);
  const auto p = path.at(t * path.length());
  return wrap({p[0], p[1]});
}

std::optional<Point> RiverPlane::project_box(std::span<const Interval> box, const Point& z) const {
  const Interval& xs = box[0];
  const Interval& ys = box[1];
  // Boxes are convex in the river metric only when they reach the spine.
  if (!ys.contains(0.0)) return std::nullopt;
  if (xs.contains(z[0])) return wrap({z[0], ys.clamp(z[1])});
  return wrap({xs.clamp(z[0]), 0.0});
}

}  // namespace hadamard
