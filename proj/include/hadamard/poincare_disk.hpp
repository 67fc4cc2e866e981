#pragma once

#include <array>

#include "hadamard/space.hpp"

namespace hadamard {

/// Tangent vector in an orthonormal frame, so its Euclidean norm is its
/// Riemannian length.
using Tangent = std::array<double, 2>;

/// Poincare disk model of the hyperbolic plane, curvature -1, with
/// d(0, z) = 2 artanh|z|. Points must satisfy |z| <= 1 - boundary_margin.
class PoincareDisk final : public Space {
 public:
  explicit PoincareDisk(double boundary_margin = 0.05);

  double boundary_margin() const noexcept { return margin_; }
  double max_radius() const noexcept { return 1.0 - margin_; }

  std::size_t dim() const noexcept override { return 2; }
  bool contains(std::span<const double> coords) const override;
  /// Angle uniform, Euclidean radius uniform on [0, 1 - margin].
  Point sample(Rng& rng) const override;

  Tangent log(const Point& base, const Point& target) const;
  /// Throws DomainError when the result leaves the margin region.
  Point exp(const Point& base, const Tangent& v) const;
  /// Same as exp without the margin check; used by solvers to test trial steps.
  std::array<double, 2> exp_coords(std::span<const double> base, const Tangent& v) const;

  /// Ratio between Riemannian and Euclidean length at z: 2 / (1 - |z|^2).
  static double conformal_factor(std::span<const double> z) noexcept;
  static double metric(std::span<const double> a, std::span<const double> b) noexcept;

 protected:
  double distance_impl(const Point& a, const Point& b) const override;
  Point geodesic_impl(const Point& a, const Point& b, double t) const override;

 private:
  double margin_;
};

}  // namespace hadamard
