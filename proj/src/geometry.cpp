#include "hadamard/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hadamard/error.hpp"

namespace hadamard {

namespace {

double sq(double v) { return v * v; }

ViolationReport make_report(std::string name, double tol) {
  ViolationReport r;
  r.check = std::move(name);
  r.tolerance = tol;
  return r;
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

double quasi_inner(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  return 0.5 * (sq(space.distance(a, d)) + sq(space.distance(b, c)) - sq(space.distance(a, c)) -
                sq(space.distance(b, d)));
}

ViolationReport check_cat0_sample(const Space& space, std::uint64_t seed, std::size_t n_samples,
                                  double tol) {
  Rng rng(seed);
  auto report = make_report("cat0 strong convexity", tol);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [x0, x1] = space.sample_pair(rng);
    Point y = space.sample(rng);
    const double t = uniform01(rng);
    const Point xt = space.geodesic_point(x0, x1, t);
    const double lhs = sq(space.distance(y, xt));
    const double rhs = (1.0 - t) * sq(space.distance(y, x0)) + t * sq(space.distance(y, x1)) -
                       t * (1.0 - t) * sq(space.distance(x0, x1));
    report.record(lhs - rhs, [&](auto& pts, auto& params) {
      pts = {x0, x1, y};
      params = {t};
    });
  }
  return report;
}

ViolationReport check_cauchy_schwarz_sample(const Space& space, std::uint64_t seed,
                                            std::size_t n_samples, double tol) {
  Rng rng(seed);
  auto report = make_report("cauchy-schwarz", tol);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [a, b] = space.sample_pair(rng);
    auto [c, d] = space.sample_pair(rng);
    const double lhs = quasi_inner(space, a, b, c, d);
    const double rhs = space.distance(a, b) * space.distance(c, d);
    report.record(lhs - rhs, [&](auto& pts, auto&) { pts = {a, b, c, d}; });
  }
  return report;
}

ViolationReport check_quasi_inner_identities(const Space& space, std::uint64_t seed,
                                             std::size_t n_samples, double tol) {
  Rng rng(seed);
  auto report = make_report("quasi-inner identities", tol);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [a, b] = space.sample_pair(rng);
    auto [c, d] = space.sample_pair(rng);
    Point e = space.sample(rng);
    const double ab_cd = quasi_inner(space, a, b, c, d);
    const double symmetry = std::abs(ab_cd - quasi_inner(space, c, d, a, b));
    const double anti = std::max(std::abs(ab_cd + quasi_inner(space, a, b, d, c)),
                                 std::abs(ab_cd + quasi_inner(space, b, a, c, d)));
    const double additive =
        std::abs(ab_cd - quasi_inner(space, a, e, c, d) - quasi_inner(space, e, b, c, d));
    const double worst = std::max({symmetry, anti, additive});
    report.record(worst, [&](auto& pts, auto& params) {
      pts = {a, b, c, d, e};
      params = {symmetry, anti, additive};
    });
  }
  return report;
}

ViolationReport check_q4bar_quadruple(const Space& space, const Point& x, const Point& y,
                                      const Point& p, const Point& q, double tol,
                                      std::size_t t_grid) {
  if (t_grid < 2) throw DomainError("q4bar t-grid needs at least 2 points");
  auto report = make_report("q4bar", tol);
  for (std::size_t j = 0; j < t_grid; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(t_grid - 1);
    const Point m = space.geodesic_point(x, y, t);
    report.record(space.distance(p, m) - space.distance(m, q), [&](auto& pts, auto& params) {
      pts = {x, y, p, q};
      params = {t};
    });
  }
  return report;
}

ViolationReport check_q4bar_sample(const Space& space, std::uint64_t seed, std::size_t n_samples,
                                   double tol, std::size_t t_grid) {
  if (t_grid < 2) throw DomainError("q4bar t-grid needs at least 2 points");
  Rng rng(seed);
  auto report = make_report("q4bar", tol);
  std::size_t admissible = 0;
  const std::size_t max_attempts = 100 * n_samples + 100;
  for (std::size_t attempt = 0; attempt < max_attempts && admissible < n_samples; ++attempt) {
    auto [x, y] = space.sample_pair(rng);
    Point p = space.sample(rng);
    Point q = space.sample(rng);
    bool px = space.distance(p, x) <= space.distance(x, q);
    bool py = space.distance(p, y) <= space.distance(y, q);
    if (!px && !py) {
      std::swap(p, q);
      px = py = true;
    }
    if (!(px && py)) continue;
    ++admissible;
    report.merge(check_q4bar_quadruple(space, x, y, p, q, tol, t_grid));
  }
  return report;
}

ViolationReport check_geodesic_consistency(const Space& space, std::uint64_t seed,
                                           std::size_t n_samples, double tol) {
  Rng rng(seed);
  auto report = make_report("geodesic consistency", tol);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [a, b] = space.sample_pair(rng);
    const double t = uniform01(rng);
    const double s = uniform01(rng);
    const double len = space.distance(a, b);
    const double scale = std::max(len, 1.0);
    const Point xt = space.geodesic_point(a, b, t);
    const Point xs = space.geodesic_point(a, b, s);
    const double worst = std::max({std::abs(space.distance(xt, xs) - std::abs(t - s) * len),
                                   std::abs(space.distance(xt, a) - t * len),
                                   std::abs(space.distance(xt, b) - (1.0 - t) * len)}) /
                         scale;
    report.record(worst, [&](auto& pts, auto& params) {
      pts = {a, b};
      params = {t, s};
    });
  }
  return report;
}

ViolationReport check_metric_axioms(const Space& space, std::uint64_t seed, std::size_t n_samples,
                                    double tol) {
  Rng rng(seed);
  auto report = make_report("metric axioms", tol);
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [a, b] = space.sample_pair(rng);
    Point c = space.sample(rng);
    const double dab = space.distance(a, b);
    const double worst = std::max({std::abs(dab - space.distance(b, a)), space.distance(a, a),
                                   space.distance(a, c) - dab - space.distance(b, c), -dab});
    report.record(worst, [&](auto& pts, auto&) { pts = {a, b, c}; });
  }
  return report;
}

Point sample_in_set(const Space& space, const ConvexSetSpec& set, Rng& rng) {
  using Kind = ConvexSetSpec::Kind;
  switch (set.kind) {
    case Kind::whole:
      return space.sample(rng);
    case Kind::singleton:
      return set.points[0];
    case Kind::segment:
      return space.geodesic_point(set.points[0], set.points[1], uniform01(rng));
    case Kind::halfspace:
      for (int i = 0; i < 10000; ++i) {
        Point z = space.sample(rng);
        if (set.contains(space, z, 0.0)) return z;
      }
      return set.points[0];
    case Kind::box: {
      std::vector<double> c(set.intervals.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double lo = std::max(set.intervals[i].lo, -5.0);
        const double hi = std::min(set.intervals[i].hi, 5.0);
        c[i] = lo < hi ? std::uniform_real_distribution<double>(lo, hi)(rng) : set.intervals[i].clamp(0.0);
      }
      return space.make_point(std::move(c));
    }
  }
  throw Unsupported("cannot sample set");
}

ViolationReport check_projection_inequality(const Space& space, const ConvexSetSpec& set,
                                            const Point& x, std::uint64_t seed,
                                            std::size_t n_members, double tol) {
  Rng rng(seed);
  auto report = make_report("projection inequality", tol);
  const Point px = space.project(set, x);
  report.record(set.contains(space, px, tol) ? 0.0 : 1.0, [&](auto& pts, auto&) { pts = {x, px}; });
  const double dx = sq(space.distance(x, px));
  for (std::size_t i = 0; i < n_members; ++i) {
    const Point y = sample_in_set(space, set, rng);
    const double amount = dx + sq(space.distance(px, y)) - sq(space.distance(x, y));
    report.record(amount, [&](auto& pts, auto&) { pts = {x, px, y}; });
  }
  return report;
}

ViolationReport check_projection_nonexpansive(const Space& space, const ConvexSetSpec& set,
                                              std::uint64_t seed, std::size_t n_pairs, double tol) {
  Rng rng(seed);
  auto report = make_report("projection nonexpansive", tol);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    auto [x, y] = space.sample_pair(rng);
    const double amount =
        space.distance(space.project(set, x), space.project(set, y)) - space.distance(x, y);
    report.record(amount, [&](auto& pts, auto&) { pts = {x, y}; });
  }
  return report;
}

}  // namespace hadamard
