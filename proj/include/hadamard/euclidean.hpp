#pragma once

#include "hadamard/space.hpp"

namespace hadamard {

/// R^n with the l2 metric. Samples are standard normal.
class EuclideanSpace final : public Space {
 public:
  explicit EuclideanSpace(std::size_t dim);

  std::size_t dim() const noexcept override { return dim_; }
  bool contains(std::span<const double> coords) const override;
  Point sample(Rng& rng) const override;

 protected:
  double distance_impl(const Point& a, const Point& b) const override;
  Point geodesic_impl(const Point& a, const Point& b, double t) const override;
  Point project_segment(const Point& a, const Point& b, const Point& x) const override;
  std::optional<Point> project_halfspace(const Point& x0, const Point& y0, const Point& z) const override;
  std::optional<Point> project_box(std::span<const Interval> box, const Point& z) const override;

 private:
  std::size_t dim_;
};

}  // namespace hadamard
