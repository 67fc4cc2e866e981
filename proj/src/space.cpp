#include "hadamard/space.hpp"

#include <cmath>

#include "hadamard/error.hpp"
#include "line_search.hpp"

namespace hadamard {

Point Space::make_point(std::vector<double> coords) const {
  if (coords.size() != dim() || !contains(coords)) {
    throw DomainError("point " + to_string(Point(coords, id_)) + " is not in space " + id_);
  }
  return wrap(std::move(coords));
}

void Space::require(const Point& p) const {
  if (p.space_id != id_) {
    throw SpaceMismatch("point from space '" + p.space_id + "' used in space '" + id_ + "'");
  }
}

double Space::distance(const Point& a, const Point& b) const {
  require(a);
  require(b);
  return distance_impl(a, b);
}

Point Space::geodesic_point(const Point& a, const Point& b, double t) const {
  require(a);
  require(b);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("geodesic parameter t = " + std::to_string(t) + " outside [0, 1]");
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return geodesic_impl(a, b, t);
}

std::pair<Point, Point> Space::sample_pair(Rng& rng) const {
  Point a = sample(rng);
  Point b = sample(rng);
  return {std::move(a), std::move(b)};
}

Point Space::project(const ConvexSetSpec& set, const Point& x) const {
  require(x);
  for (const auto& p : set.points) require(p);
  using Kind = ConvexSetSpec::Kind;
  switch (set.kind) {
    case Kind::whole:
      return x;
    case Kind::singleton:
      return set.points.at(0);
    case Kind::segment:
      return project_segment(set.points.at(0), set.points.at(1), x);
    case Kind::halfspace: {
      if (set.contains(*this, x, 0.0)) return x;
      if (auto p = project_halfspace(set.points.at(0), set.points.at(1), x)) return *p;
      break;
    }
    case Kind::box: {
      if (set.intervals.size() != dim()) {
        throw DomainError("box has " + std::to_string(set.intervals.size()) +
                          " intervals, space " + id() + " has dimension " + std::to_string(dim()));
      }
      if (auto p = project_box(set.intervals, x)) return *p;
      break;
    }
  }
  throw Unsupported(std::string("no projector for ") + to_string(set.kind) + " sets in space " + id());
}

Point Space::project_segment(const Point& a, const Point& b, const Point& x) const {
  if (distance_impl(a, b) == 0.0) return a;
  auto objective = [&](double t) { return distance_impl(x, geodesic_point(a, b, t)); };
  const auto [t, value] = detail::golden_minimize(objective, 0.0, 1.0);
  (void)value;
  return geodesic_point(a, b, t);
}

std::optional<Point> Space::project_halfspace(const Point&, const Point&, const Point&) const {
  return std::nullopt;
}

std::optional<Point> Space::project_box(std::span<const Interval>, const Point&) const {
  return std::nullopt;
}

}  // namespace hadamard
