#include "hadamard/poincare_disk.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "hadamard/error.hpp"

namespace hadamard {

namespace {

using Complex = std::complex<double>;

Complex as_complex(std::span<const double> z) { return {z[0], z[1]}; }

/// Isometry sending a to 0: z -> (z - a) / (1 - conj(a) z).
Complex to_origin(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

/// Inverse isometry sending 0 to a.
Complex from_origin(Complex a, Complex w) { return (w + a) / (1.0 + std::conj(a) * w); }

std::string disk_id(double margin) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "disk:%g", margin);
  return buf;
}

}  // namespace

PoincareDisk::PoincareDisk(double boundary_margin) : Space(disk_id(boundary_margin)), margin_(boundary_margin) {
  if (!(boundary_margin > 0.0 && boundary_margin < 1.0)) {
    throw DomainError("disk boundary margin must lie in (0, 1)");
  }
}

bool PoincareDisk::contains(std::span<const double> coords) const {
  if (coords.size() != 2 || !std::isfinite(coords[0]) || !std::isfinite(coords[1])) return false;
  // Geodesic combinations of members may round a few ulps outward.
  return std::hypot(coords[0], coords[1]) <= max_radius() * (1.0 + 1e-12);
}

Point PoincareDisk::sample(Rng& rng) const {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.0, max_radius());
  const double th = angle(rng);
  const double r = radius(rng);
  return wrap({r * std::cos(th), r * std::sin(th)});
}

double PoincareDisk::conformal_factor(std::span<const double> z) noexcept {
  return 2.0 / (1.0 - (z[0] * z[0] + z[1] * z[1]));
}

double PoincareDisk::metric(std::span<const double> a, std::span<const double> b) noexcept {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double na = 1.0 - (a[0] * a[0] + a[1] * a[1]);
  const double nb = 1.0 - (b[0] * b[0] + b[1] * b[1]);
  return 2.0 * std::asinh(std::sqrt(dx * dx + dy * dy) / std::sqrt(na * nb));
}

double PoincareDisk::distance_impl(const Point& a, const Point& b) const {
  return metric(a.coords, b.coords);
}

Point PoincareDisk::geodesic_impl(const Point& a, const Point& b, double t) const {
  const Complex ca = as_complex(a.coords);
  const Complex w = to_origin(ca, as_complex(b.coords));
  const double rho = std::abs(w);
  if (rho == 0.0) return a;
  const Complex zeta = std::tanh(t * std::atanh(rho)) * (w / rho);
  const Complex z = from_origin(ca, zeta);
  return wrap({z.real(), z.imag()});
}

Tangent PoincareDisk::log(const Point& base, const Point& target) const {
  require(base);
  require(target);
  const Complex w = to_origin(as_complex(base.coords), as_complex(target.coords));
  const double rho = std::abs(w);
  if (rho == 0.0) return {0.0, 0.0};
  // The isometry's derivative at 0 is the positive real 1 - |base|^2, so the
  // direction of w is also the direction of the tangent vector at base.
  const Complex v = 2.0 * std::atanh(rho) * (w / rho);
  return {v.real(), v.imag()};
}

std::array<double, 2> PoincareDisk::exp_coords(std::span<const double> base, const Tangent& v) const {
  const double len = std::hypot(v[0], v[1]);
  if (len == 0.0) return {base[0], base[1]};
  const Complex zeta = std::tanh(0.5 * len) * Complex(v[0] / len, v[1] / len);
  const Complex z = from_origin(as_complex(base), zeta);
  return {z.real(), z.imag()};
}

Point PoincareDisk::exp(const Point& base, const Tangent& v) const {
  require(base);
  const auto c = exp_coords(base.coords, v);
  if (!contains(c)) {
    throw DomainError("exp leaves the disk margin region (|z| = " + std::to_string(std::hypot(c[0], c[1])) +
                      " > " + std::to_string(max_radius()) + ")");
  }
  return wrap({c[0], c[1]});
}

}  // namespace hadamard
