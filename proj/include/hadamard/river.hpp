#pragma once

#include <array>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

/// Piecewise-linear tree path with cumulative arclength at each breakpoint.
struct TreePath {
  std::vector<std::array<double, 2>> breakpoints;
  std::vector<double> arclength;  // arclength[0] == 0

  double length() const noexcept { return arclength.empty() ? 0.0 : arclength.back(); }
  /// Point at arclength `s`; a parameter that lands on a breakpoint resolves
  /// to the earlier segment.
  std::array<double, 2> at(double s) const;
};

/// The unique geodesic between a and b in the river metric: breakpoints
/// a, (a.x, 0), (b.x, 0), b with degenerate legs dropped. When a.x == b.x the
/// path is the single vertical segment.
TreePath river_canonical_path(std::span<const double> a, std::span<const double> b);

/// R^2 with the river metric
///   r((x,y),(x',y')) = |y - y'|               if x == x'
///                      |y| + |y'| + |x - x'|   otherwise.
/// An R-tree whose spine is the x-axis. Samples are uniform on [-5,5]^2.
class RiverPlane final : public Space {
 public:
  RiverPlane();

  static constexpr double kSampleHalfWidth = 5.0;

  std::size_t dim() const noexcept override { return 2; }
  bool contains(std::span<const double> coords) const override;
  Point sample(Rng& rng) const override;
  /// One pair in four shares its abscissa, exercising the vertical branch.
  std::pair<Point, Point> sample_pair(Rng& rng) const override;

  static double metric(std::span<const double> a, std::span<const double> b) noexcept;

 protected:
  double distance_impl(const Point& a, const Point& b) const override;
  Point geodesic_impl(const Point& a, const Point& b, double t) const override;
  std::optional<Point> project_box(std::span<const Interval> box, const Point& z) const override;
};

}  // namespace hadamard
