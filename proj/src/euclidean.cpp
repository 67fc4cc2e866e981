#include "hadamard/euclidean.hpp"

#include <algorithm>
#include <cmath>

#include "hadamard/error.hpp"

namespace hadamard {

EuclideanSpace::EuclideanSpace(std::size_t dim) : Space("euclidean:" + std::to_string(dim)), dim_(dim) {
  if (dim == 0) throw DomainError("euclidean space needs a positive dimension");
}

bool EuclideanSpace::contains(std::span<const double> coords) const {
  if (coords.size() != dim_) return false;
  for (double c : coords) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

Point EuclideanSpace::sample(Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(dim_);
  for (auto& v : c) v = normal(rng);
  return wrap(std::move(c));
}

double EuclideanSpace::distance_impl(const Point& a, const Point& b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point EuclideanSpace::geodesic_impl(const Point& a, const Point& b, double t) const {
  std::vector<double> c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = (1.0 - t) * a[i] + t * b[i];
  return wrap(std::move(c));
}

Point EuclideanSpace::project_segment(const Point& a, const Point& b, const Point& x) const {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    num += (x[i] - a[i]) * (b[i] - a[i]);
    den += (b[i] - a[i]) * (b[i] - a[i]);
  }
  if (den == 0.0) return a;
  const double t = std::clamp(num / den, 0.0, 1.0);
  return geodesic_point(a, b, t);
}

std::optional<Point> EuclideanSpace::project_halfspace(const Point& x0, const Point& y0,
                                                       const Point& z) const {
  // F(x0, y0) = {w : <w - m, y0 - x0> <= 0} with m the midpoint.
  double dot = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double n = y0[i] - x0[i];
    dot += (z[i] - 0.5 * (x0[i] + y0[i])) * n;
    nn += n * n;
  }
  if (nn == 0.0 || dot <= 0.0) return z;
  std::vector<double> c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = z[i] - dot / nn * (y0[i] - x0[i]);
  return wrap(std::move(c));
}

std::optional<Point> EuclideanSpace::project_box(std::span<const Interval> box, const Point& z) const {
  std::vector<double> c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = box[i].clamp(z[i]);
  return wrap(std::move(c));
}

}  // namespace hadamard
