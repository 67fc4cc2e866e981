#include "hadamard/circle.hpp"

#include <cmath>
#include <numbers>

namespace hadamard {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  return r == std::numbers::pi ? -std::numbers::pi : r;
}

}  // namespace

UnitCircle::UnitCircle() : Space("circle") {}

bool UnitCircle::contains(std::span<const double> coords) const {
  return coords.size() == 1 && std::isfinite(coords[0]) && std::abs(coords[0]) <= std::numbers::pi;
}

Point UnitCircle::sample(Rng& rng) const {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  return wrap({u(rng)});
}

double UnitCircle::distance_impl(const Point& a, const Point& b) const {
  return std::abs(std::remainder(a[0] - b[0], kTwoPi));
}

Point UnitCircle::geodesic_impl(const Point& a, const Point& b, double t) const {
  const double delta = std::remainder(b[0] - a[0], kTwoPi);
  return wrap({wrap_angle(a[0] + t * delta)});
}

}  // namespace hadamard
