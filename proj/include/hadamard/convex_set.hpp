#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hadamard/point.hpp"

namespace hadamard {

class Space;

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v, double tol = 0.0) const noexcept { return v >= lo - tol && v <= hi + tol; }
  double clamp(double v) const noexcept { return v < lo ? lo : (v > hi ? hi : v); }
  bool is_point() const noexcept { return lo == hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed convex set with a known projector.
///
///  - whole:     the entire space
///  - singleton: {points[0]}
///  - segment:   the geodesic segment [points[0], points[1]]
///  - halfspace: F(x, y) = {z : d(x, z) <= d(z, y)} with x = points[0], y = points[1]
///  - box:       product of coordinate intervals (in the river plane the
///               second interval must contain 0 for the set to be convex)
struct ConvexSetSpec {
  enum class Kind { whole, singleton, segment, halfspace, box };

  Kind kind = Kind::whole;
  std::vector<Point> points;
  std::vector<Interval> intervals;

  static ConvexSetSpec whole() { return {}; }
  static ConvexSetSpec singleton(Point p);
  static ConvexSetSpec segment(Point a, Point b);
  static ConvexSetSpec halfspace(Point x, Point y);
  static ConvexSetSpec box(std::vector<Interval> intervals);
  /// {(s, 0, ..., 0)} in a space of the given dimension.
  static ConvexSetSpec x_axis(std::size_t dim);

  /// Membership to absolute tolerance `tol`.
  bool contains(const Space& space, const Point& z, double tol = 1e-12) const;

  std::string describe() const;

  friend bool operator==(const ConvexSetSpec&, const ConvexSetSpec&) = default;
};

const char* to_string(ConvexSetSpec::Kind kind);

/// Parses "whole", "origin", "x-axis", "point(a,b)", "segment(a,b;c,d)",
/// "halfspace(a,b;c,d)" and "box([lo,hi]x[lo,hi])" (use inf/-inf for unbounded ends).
ConvexSetSpec parse_convex_set(const Space& space, const std::string& text);

}  // namespace hadamard
