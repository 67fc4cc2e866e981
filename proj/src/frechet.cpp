#include "hadamard/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hadamard/error.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/poincare_disk.hpp"
#include "hadamard/river.hpp"
#include "line_search.hpp"

namespace hadamard {

namespace {

double sq(double v) { return v * v; }

void validate(const FrechetProblem& problem) {
  if (!problem.space) throw DomainError("Frechet problem without a space");
  if (problem.anchors.empty()) throw DomainError("Frechet problem needs at least one anchor");
  if (problem.weights.size() != problem.anchors.size())
    throw DomainError("Frechet problem: weights and anchors differ in length");
  for (const auto& a : problem.anchors) problem.space->require(a);
}

Point euclidean_mean(const FrechetProblem& problem) {
  const std::size_t dim = problem.anchors[0].dim();
  // Offsets from the first anchor, so coincident anchors come back exactly.
  const Point& base = problem.anchors[0];
  std::vector<double> c(dim, 0.0);
  for (std::size_t i = 1; i < problem.size(); ++i)
    for (std::size_t k = 0; k < dim; ++k) c[k] += problem.weights[i] * (problem.anchors[i][k] - base[k]);
  for (std::size_t k = 0; k < dim; ++k) c[k] += base[k];
  return problem.space->make_point(std::move(c));
}

// On the spine every anchor is reached through its foot, so F(s, 0) is the
// convex piecewise quadratic sum_j w_j (|y_j| + |s - x_j|)^2. The minimizer of
// F over the tree sits on the vertical line through the spine minimizer.
Point river_mean(const FrechetProblem& problem) {
  const auto& anchors = problem.anchors;
  const auto& w = problem.weights;
  const std::size_t n = anchors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return anchors[i][0] < anchors[j][0]; });

  // Left of s an anchor contributes (s - (x - |y|))^2, right of s (s - (x + |y|))^2.
  double right = 0.0;
  for (std::size_t j = 0; j < n; ++j) right += w[j] * (anchors[j][0] + std::abs(anchors[j][1]));
  double left = 0.0;
  double s_star = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double lo = i == 0 ? -INFINITY : anchors[order[i - 1]][0];
    const double hi = i == n ? INFINITY : anchors[order[i]][0];
    const double candidate = left + right;
    if (candidate <= hi) {
      s_star = std::max(candidate, lo);
      break;
    }
    const auto& a = anchors[order[i]];
    left += w[order[i]] * (a[0] - std::abs(a[1]));
    right -= w[order[i]] * (a[0] + std::abs(a[1]));
  }

  // Along the vertical line x = s*, y >= 0 (resp. y <= 0), every term is a
  // quadratic (y - t_j)^2, so the one-sided minimizer is a clamped average.
  auto best_on_half = [&](double sign) {
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = anchors[j];
      const double target = a[0] == s_star ? sign * a[1] : -(std::abs(a[1]) + std::abs(s_star - a[0]));
      t += w[j] * target;
    }
    return sign * std::max(t, 0.0);
  };
  const double y_up = best_on_half(1.0);
  const double y_down = best_on_half(-1.0);
  const double y = y_up > 0.0 ? y_up : (y_down < 0.0 ? y_down : 0.0);
  return problem.space->make_point({s_star, y});
}

struct DiskResult {
  Point mean;
  std::size_t iterations;
  bool converged;
};

DiskResult disk_mean(const PoincareDisk& disk, const FrechetProblem& problem, Point x, double tol,
                     std::size_t max_iter) {
  double fx = frechet_value(problem, x);
  for (std::size_t it = 0; it < max_iter; ++it) {
    Tangent g{0.0, 0.0};
    for (std::size_t i = 0; i < problem.size(); ++i) {
      if (problem.weights[i] == 0.0) continue;
      const Tangent v = disk.log(x, problem.anchors[i]);
      g[0] += problem.weights[i] * v[0];
      g[1] += problem.weights[i] * v[1];
    }
    const double norm = std::hypot(g[0], g[1]);
    if (norm < tol) return {std::move(x), it, true};
    bool accepted = false;
    for (double alpha = 1.0; alpha > 1e-12; alpha *= 0.5) {
      const Tangent step{alpha * g[0], alpha * g[1]};
      const auto trial = disk.exp_coords(x.coords, step);
      if (!disk.contains(trial)) continue;
      Point y = disk.make_point({trial[0], trial[1]});
      const double fy = frechet_value(problem, y);
      if (fy <= fx) {
        accepted = true;
        x = std::move(y);
        fx = fy;
        if (alpha * norm < tol) return {std::move(x), it + 1, true};
        break;
      }
    }
    if (!accepted) return {std::move(x), it, false};
  }
  return {std::move(x), max_iter, false};
}

struct GenericResult {
  Point mean;
  std::size_t sweeps;
};

GenericResult generic_mean(const FrechetProblem& problem, Point x, double tol, std::size_t max_sweeps) {
  const Space& space = *problem.space;
  std::size_t sweep = 1;
  for (; sweep <= max_sweeps; ++sweep) {
    const double lambda = 1.0 / static_cast<double>(sweep);
    const Point prev = x;
    for (std::size_t i = 0; i < problem.size(); ++i) {
      const double wl = 2.0 * lambda * problem.weights[i];
      if (wl == 0.0) continue;
      x = space.geodesic_point(x, problem.anchors[i], wl / (1.0 + wl));
    }
    if (space.distance(prev, x) < tol) break;
  }

  // Polish: exact line searches toward each anchor until F stops decreasing.
  double fx = frechet_value(problem, x);
  for (int round = 0; round < 500; ++round) {
    const double before = fx;
    for (std::size_t i = 0; i < problem.size(); ++i) {
      if (problem.weights[i] == 0.0) continue;
      const Point& a = problem.anchors[i];
      auto along = [&](double t) { return frechet_value(problem, space.geodesic_point(x, a, t)); };
      const auto [t, value] = detail::golden_minimize(along, 0.0, 1.0);
      if (value < fx) {
        x = space.geodesic_point(x, a, t);
        fx = value;
      }
    }
    if (before - fx <= 1e-16 * (1.0 + fx)) break;
  }
  return {std::move(x), std::min(sweep, max_sweeps)};
}

}  // namespace

FrechetProblem FrechetProblem::uniform(SpaceHandle space, std::vector<Point> anchors) {
  const std::size_t n = anchors.size();
  std::vector<double> weights(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  FrechetProblem p{std::move(space), std::move(anchors), std::move(weights)};
  validate(p);
  return p;
}

FrechetProblem FrechetProblem::weighted(SpaceHandle space, std::vector<Point> anchors,
                                        std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("Frechet weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("Frechet weights sum to zero");
  for (double& w : weights) w /= total;
  FrechetProblem p{std::move(space), std::move(anchors), std::move(weights)};
  validate(p);
  return p;
}

double frechet_value(const FrechetProblem& problem, const Point& x) {
  validate(problem);
  problem.space->require(x);
  double total = 0.0;
  for (std::size_t i = 0; i < problem.size(); ++i)
    total += problem.weights[i] * sq(problem.space->distance(problem.anchors[i], x));
  return total;
}

double mean_distance_bound_check(const FrechetProblem& problem, const Point& candidate, const Point& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < problem.size(); ++i)
    total += problem.weights[i] * problem.space->distance(problem.anchors[i], y);
  return total - problem.space->distance(candidate, y);
}

MeanCertificate certify_mean(const FrechetProblem& problem, const Point& candidate,
                             std::size_t n_probes, std::uint64_t seed,
                             std::span<const Point> extra_probes) {
  if (n_probes == 0) throw DomainError("certificate needs at least one probe");
  const Space& space = *problem.space;
  MeanCertificate cert;
  cert.candidate = candidate;
  cert.functional_value = frechet_value(problem, candidate);
  cert.worst_gap = INFINITY;
  cert.worst_slack = INFINITY;

  auto probe = [&](const Point& y) {
    const double gap = frechet_value(problem, y) - cert.functional_value - sq(space.distance(candidate, y));
    cert.worst_gap = std::min(cert.worst_gap, gap);
    cert.worst_slack = std::min(cert.worst_slack, mean_distance_bound_check(problem, candidate, y));
    ++cert.probes;
  };

  const std::size_t n_anchor = std::min(problem.size(), std::max<std::size_t>(n_probes / 2, 1));
  for (std::size_t j = 0; j < n_anchor; ++j) probe(problem.anchors[j * problem.size() / n_anchor]);
  Rng rng(seed);
  std::uniform_real_distribution<double> near(0.0, 0.1);
  for (std::size_t j = n_anchor; j < n_probes; ++j) {
    Point y = space.sample(rng);
    if (j % 2 == 1) y = space.geodesic_point(candidate, y, near(rng));
    probe(y);
  }
  for (const auto& y : extra_probes) probe(y);
  return cert;
}

KarcherResult karcher_mean(const FrechetProblem& problem, const KarcherOptions& options) {
  validate(problem);
  if (!(options.tol > 0.0)) throw DomainError("Karcher tolerance must be positive");
  const Space& space = *problem.space;

  auto finish = [&](Point mean, std::size_t iterations, std::string solver) {
    KarcherResult r;
    r.certificate = certify_mean(problem, mean, options.n_probes, options.seed, options.extra_probes);
    r.mean = std::move(mean);
    r.iterations = iterations;
    r.solver = std::move(solver);
    return r;
  };

  std::size_t positive = 0, last = 0;
  for (std::size_t i = 0; i < problem.size(); ++i)
    if (problem.weights[i] > 0.0) ++positive, last = i;
  if (positive == 1) return finish(problem.anchors[last], 0, "single-anchor");

  Point initial = options.initial ? *options.initial : problem.anchors[0];
  space.require(initial);

  if (options.method == KarcherMethod::automatic) {
    if (dynamic_cast<const EuclideanSpace*>(&space))
      return finish(euclidean_mean(problem), 1, "euclidean-closed-form");
    if (dynamic_cast<const RiverPlane*>(&space)) {
      auto r = finish(river_mean(problem), 1, "river-tree");
      if (r.certificate.passes()) return r;
    }
    if (const auto* disk = dynamic_cast<const PoincareDisk*>(&space)) {
      auto d = disk_mean(*disk, problem, initial, options.tol, options.max_sweeps);
      if (d.converged) {
        auto r = finish(std::move(d.mean), d.iterations, "disk-riemannian");
        if (r.certificate.passes()) return r;
      }
    }
  }

  double tol = options.tol;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto g = generic_mean(problem, initial, tol, options.max_sweeps);
    auto r = finish(std::move(g.mean), g.sweeps, "incremental-proximal");
    if (r.certificate.passes()) return r;
    initial = r.mean;
    tol *= 1e-2;
    if (attempt == 1) {
      throw SolverFailure("Karcher mean certificate failed after retry: worst gap " +
                          std::to_string(r.certificate.worst_gap) + ", worst slack " +
                          std::to_string(r.certificate.worst_slack));
    }
  }
  throw SolverFailure("unreachable");
}

}  // namespace hadamard
