#include "hadamard/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hadamard/error.hpp"
#include "line_search.hpp"

namespace hadamard {

OrbitTrace generate_orbit(const MappingSpec& map, const Point& start, std::size_t horizon) {
  if (horizon < 1) throw DomainError("orbit horizon must be at least 1");
  const Space& space = *map.space();
  space.require(start);
  OrbitTrace orbit{map, start, {start}, {}};
  orbit.points.reserve(horizon + 1);
  for (std::size_t i = 0; i < horizon; ++i) orbit.points.push_back(map.apply(orbit.points.back()));

  orbit.fejer.check = "fejer monotone orbit";
  orbit.fejer.tolerance = tolerance::contract;
  if (map.fixed_set()) {
    const Point p = project_fixed_set(map, start);
    for (std::size_t i = 0; i < horizon; ++i) {
      const double amount = space.distance(orbit.points[i + 1], p) - space.distance(orbit.points[i], p);
      orbit.fejer.record(amount, [&](auto& pts, auto& params) {
        pts = {orbit.points[i], orbit.points[i + 1], p};
        params = {static_cast<double>(i)};
      });
    }
  }
  return orbit;
}

double orbit_replay_error(const OrbitTrace& orbit) {
  const Space& space = *orbit.map.space();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i)
    worst = std::max(worst, space.distance(orbit.map.apply(orbit.points[i]), orbit.points[i + 1]));
  return worst;
}

double MeanTrace::worst_certificate_gap() const {
  double worst = INFINITY;
  for (const auto& e : entries) {
    worst = std::min(worst, e.certificate.worst_gap);
    for (const auto& c : e.shifted_certificates) worst = std::min(worst, c.worst_gap);
  }
  return worst;
}

double MeanTrace::worst_certificate_slack() const {
  double worst = INFINITY;
  for (const auto& e : entries) {
    worst = std::min(worst, e.certificate.worst_slack);
    for (const auto& c : e.shifted_certificates) worst = std::min(worst, c.worst_slack);
  }
  return worst;
}

std::vector<std::size_t> default_schedule(std::size_t horizon) {
  std::set<std::size_t> s;
  for (std::size_t n = 1; n <= horizon; n *= 2) s.insert(n);
  for (std::size_t n : {horizon / 8, horizon / 2, horizon})
    if (n >= 1) s.insert(n);
  return {s.begin(), s.end()};
}

std::size_t required_horizon(std::span<const std::size_t> schedule, std::span<const std::size_t> k_list) {
  std::size_t n_max = 0, k_max = 0;
  for (auto n : schedule) n_max = std::max(n_max, n);
  for (auto k : k_list) k_max = std::max(k_max, k);
  // T^{k+n-1} x is the last anchor; T^n x is needed for the projection trace.
  return std::max<std::size_t>({n_max + k_max, n_max, 1}) - (k_max > 0 ? 1 : 0);
}

double hull_gap(const Space& space, const Point& target, std::span<const Point> points, std::size_t depth) {
  if (points.empty()) throw DomainError("hull of an empty set");
  // Cap the generating set; the result stays an upper bound on the hull distance.
  constexpr std::size_t kMaxGenerators = 64;
  std::vector<const Point*> gens;
  const std::size_t m = std::min(points.size(), kMaxGenerators);
  for (std::size_t j = 0; j < m; ++j) gens.push_back(&points[j * points.size() / m]);

  const Point* nearest = gens[0];
  for (auto* g : gens)
    if (space.distance(*g, target) < space.distance(*nearest, target)) nearest = g;
  Point c = *nearest;
  double best = space.distance(c, target);
  // `depth` rounds, extended up to 4x while the bound is above 1e-12 and still shrinking.
  for (std::size_t round = 0; round < 4 * depth && best > 1e-12; ++round) {
    const double before = best;
    for (auto* g : gens) {
      auto along = [&](double t) { return space.distance(space.geodesic_point(c, *g, t), target); };
      const auto [t, value] = detail::golden_minimize(along, 0.0, 1.0, 1e-12);
      if (value < best) {
        c = space.geodesic_point(c, *g, t);
        best = value;
      }
    }
    if (round + 1 >= depth && best >= before) break;
  }
  return best;
}

std::vector<Point> hull_probes(const Space& space, std::span<const Point> points, std::size_t count,
                               std::size_t depth, std::uint64_t seed) {
  if (points.empty()) throw DomainError("hull of an empty set");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point c = points[pick(rng)];
    for (std::size_t d = 0; d < depth; ++d) c = space.geodesic_point(c, points[pick(rng)], u(rng));
    out.push_back(std::move(c));
  }
  return out;
}

MeanSequenceResult mean_sequence(const OrbitTrace& orbit, std::span<const std::size_t> schedule,
                                 std::span<const std::size_t> k_list, const MeanSequenceOptions& options) {
  const SpaceHandle& handle = orbit.map.space();
  const Space& space = *handle;
  const auto& pts = orbit.points;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw DomainError("schedule entries must be >= 1");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw DomainError("schedule must be increasing");
    if (schedule[i] >= pts.size()) throw DomainError("schedule exceeds the orbit horizon");
    for (auto k : k_list)
      if (k + schedule[i] > pts.size()) throw DomainError("shifted mean exceeds the orbit horizon");
  }

  MeanSequenceResult out;
  out.means.space = handle;
  out.means.schedule.assign(schedule.begin(), schedule.end());
  out.means.k_list.assign(k_list.begin(), k_list.end());
  out.diagnostics.has_projection = orbit.map.fixed_set().has_value();

  // Fixed points against which boundedness is measured.
  std::vector<Point> fixed_points;
  if (out.diagnostics.has_projection) {
    fixed_points.push_back(project_fixed_set(orbit.map, orbit.start));
    Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < 8; ++i) fixed_points.push_back(sample_in_set(space, *orbit.map.fixed_set(), rng));
  }

  std::optional<Point> warm;
  std::vector<std::optional<Point>> warm_shifted(k_list.size());

  auto solve = [&](std::size_t k, std::size_t n, const std::optional<Point>& init, std::uint64_t salt) {
    std::vector<Point> window(pts.begin() + static_cast<std::ptrdiff_t>(k),
                              pts.begin() + static_cast<std::ptrdiff_t>(k + n));
    KarcherOptions ko;
    ko.tol = options.tol;
    ko.initial = init;
    ko.n_probes = options.n_probes;
    ko.seed = options.seed + salt;
    ko.extra_probes = hull_probes(space, window, options.hull_probes, options.hull_depth, options.seed + salt);
    auto r = karcher_mean(FrechetProblem::uniform(handle, window), ko);
    const double gap = hull_gap(space, r.mean, window, options.hull_depth);
    return std::make_pair(std::move(r), gap);
  };

  for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
    const std::size_t n = schedule[idx];
    MeanEntry entry;
    entry.n = n;
    DiagnosticsRecord rec;
    rec.n = n;

    auto [base, base_gap] = solve(0, n, warm, 1000 * idx);
    entry.mean = base.mean;
    entry.certificate = base.certificate;
    warm = base.mean;
    rec.residual = residual(orbit.map, entry.mean);
    rec.frechet_value = base.certificate.functional_value;
    rec.cert_gap = base.certificate.worst_gap;
    rec.hull_gap = base_gap;

    for (std::size_t j = 0; j < k_list.size(); ++j) {
      auto [sh, sh_gap] = solve(k_list[j], n, warm_shifted[j] ? warm_shifted[j] : warm, 1000 * idx + 1 + j);
      warm_shifted[j] = sh.mean;
      rec.shifted_residuals.push_back(residual(orbit.map, sh.mean));
      rec.shift_gaps.push_back(space.distance(entry.mean, sh.mean));
      rec.cert_gap = std::min(rec.cert_gap, sh.certificate.worst_gap);
      rec.hull_gap = std::max(rec.hull_gap, sh_gap);
      entry.shifted.push_back(sh.mean);
      entry.shifted_certificates.push_back(sh.certificate);
    }

    if (out.diagnostics.has_projection) {
      rec.proj_point = project_fixed_set(orbit.map, pts[n]);
      rec.orbit_proj_dist = space.distance(*rec.proj_point, pts[n]);
      rec.boundedness_slack = INFINITY;
      for (const auto& p : fixed_points) {
        const double dx = space.distance(orbit.start, p);
        rec.boundedness_slack = std::min(rec.boundedness_slack, dx - space.distance(entry.mean, p));
        for (const auto& s : entry.shifted)
          rec.boundedness_slack = std::min(rec.boundedness_slack, dx - space.distance(s, p));
      }
    } else {
      rec.orbit_proj_dist = std::nan("");
      rec.boundedness_slack = std::nan("");
    }
    out.means.entries.push_back(std::move(entry));
    out.diagnostics.records.push_back(std::move(rec));
  }
  return out;
}

std::vector<ProjectionStep> projection_trace(const OrbitTrace& orbit) {
  const Space& space = *orbit.map.space();
  std::vector<ProjectionStep> out;
  out.reserve(orbit.points.size());
  for (const auto& x : orbit.points) {
    Point p = project_fixed_set(orbit.map, x);
    const double d = space.distance(p, x);
    out.push_back({std::move(p), d});
  }
  return out;
}

ViolationReport check_projection_monotone(std::span<const ProjectionStep> trace, double slack) {
  ViolationReport report;
  report.check = "projection distance nonincreasing";
  report.tolerance = slack;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    report.record(trace[i].distance - trace[i - 1].distance, [&](auto& pts, auto& params) {
      pts = {trace[i - 1].projection, trace[i].projection};
      params = {static_cast<double>(i)};
    });
  }
  return report;
}

ViolationReport halfspace_membership_check(const OrbitTrace& orbit, const Point& p, const Point& v,
                                           std::size_t k0, std::span<const Point> means, double tol) {
  const Space& space = *orbit.map.space();
  ViolationReport report;
  report.check = "half-space membership";
  report.tolerance = tol;
  auto check = [&](const Point& z, double tag) {
    report.record(space.distance(p, z) - space.distance(z, v), [&](auto& pts, auto& params) {
      pts = {z};
      params = {tag};
    });
  };
  for (std::size_t k = k0; k < orbit.points.size(); ++k) check(orbit.points[k], static_cast<double>(k));
  for (std::size_t i = 0; i < means.size(); ++i) check(means[i], -1.0 - static_cast<double>(i));
  return report;
}

const char* to_string(VerdictStatus status) {
  return status == VerdictStatus::converged ? "converged" : "inconclusive";
}

Verdict verdict(const MeanTrace& means, const DiagnosticsTrace& diagnostics,
                std::span<const ProjectionStep> projection, double tol_verdict) {
  if (means.entries.empty() || means.entries.size() != diagnostics.records.size() || !means.space)
    throw DomainError("verdict needs matching, nonempty mean and diagnostics traces");
  const Space& space = *means.space;
  const auto& entries = means.entries;

  // Distance to P T^n x, or the Cauchy gap to the previous scheduled mean.
  auto agreement_at = [&](std::size_t i) -> double {
    if (!projection.empty()) {
      const std::size_t n = std::min(entries[i].n, projection.size() - 1);
      return space.distance(entries[i].mean, projection[n].projection);
    }
    if (i == 0) return entries.size() == 1 ? 0.0 : INFINITY;
    return space.distance(entries[i].mean, entries[i - 1].mean);
  };

  Verdict v;
  v.tol_verdict = tol_verdict;
  v.limit_candidate = projection.empty() ? entries.back().mean : projection.back().projection;
  v.agreement = agreement_at(entries.size() - 1);
  v.residual = diagnostics.records.back().residual;
  v.status = v.agreement <= tol_verdict && v.residual <= tol_verdict ? VerdictStatus::converged
                                                                     : VerdictStatus::inconclusive;
  if (v.status == VerdictStatus::converged) {
    std::size_t first = entries.size() - 1;
    while (first > 0 && agreement_at(first - 1) <= tol_verdict &&
           diagnostics.records[first - 1].residual <= tol_verdict)
      --first;
    v.converged_at = entries[first].n;
  }
  return v;
}

}  // namespace hadamard
