#pragma once

#include "hadamard/space.hpp"

namespace hadamard {

/// Unit circle with the arc-length metric, parametrized by angle in [-pi, pi].
///
/// Geodesic but not CAT(0): antipodal configurations violate the strong
/// convexity of d^2. Shipped as the negative control for the geometry checks.
class UnitCircle final : public Space {
 public:
  UnitCircle();

  std::size_t dim() const noexcept override { return 1; }
  bool contains(std::span<const double> coords) const override;
  Point sample(Rng& rng) const override;

 protected:
  double distance_impl(const Point& a, const Point& b) const override;
  Point geodesic_impl(const Point& a, const Point& b, double t) const override;
};

}  // namespace hadamard
