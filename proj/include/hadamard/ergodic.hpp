#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadamard/frechet.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/violation.hpp"

namespace hadamard {

/// x, Tx, ..., T^N x.
struct OrbitTrace {
  MappingSpec map;
  Point start;
  std::vector<Point> points;
  /// d(T^{n+1}x, p) <= d(T^n x, p) for p = P_{F(T)} x; empty when F(T) is unknown.
  ViolationReport fejer;

  std::size_t horizon() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

OrbitTrace generate_orbit(const MappingSpec& map, const Point& start, std::size_t horizon);

/// Re-applies the map and reports the worst replay mismatch.
double orbit_replay_error(const OrbitTrace& orbit);

/// Karcher means sigma_n (anchors T^0 x .. T^{n-1} x) and sigma_n^k
/// (anchors T^k x .. T^{k+n-1} x) at one schedule point.
struct MeanEntry {
  std::size_t n = 0;
  Point mean;
  MeanCertificate certificate;
  std::vector<Point> shifted;                    // parallel to MeanTrace::k_list
  std::vector<MeanCertificate> shifted_certificates;
};

struct MeanTrace {
  SpaceHandle space;
  std::vector<std::size_t> schedule;
  std::vector<std::size_t> k_list;
  std::vector<MeanEntry> entries;

  /// Smallest certificate margin over every mean in the trace.
  double worst_certificate_gap() const;
  double worst_certificate_slack() const;
};

struct DiagnosticsRecord {
  std::size_t n = 0;
  double residual = 0.0;                 // d(sigma_n, T sigma_n)
  std::vector<double> shifted_residuals;  // d(sigma_n^k, T sigma_n^k)
  std::vector<double> shift_gaps;        // d(sigma_n, sigma_n^k), parallel to k_list
  std::optional<Point> proj_point;       // P T^n x
  double orbit_proj_dist = 0.0;          // d(P T^n x, T^n x); NaN when F(T) is unknown
  double hull_gap = 0.0;                 // worst upper bound on d(mean, co{T^m x})
  double boundedness_slack = 0.0;        // min over fixed points p of d(x,p) - d(mean, p)
  double frechet_value = 0.0;            // F_n(sigma_n)
  double cert_gap = 0.0;                 // worst certificate gap among the means at n
};

struct DiagnosticsTrace {
  std::vector<DiagnosticsRecord> records;
  bool has_projection = false;
};

struct MeanSequenceOptions {
  double tol = 1e-12;
  std::uint64_t seed = 0;
  std::size_t n_probes = kDefaultProbes;
  std::size_t hull_depth = 12;
  std::size_t hull_probes = 64;
};

/// Powers of two up to `horizon`, together with horizon/8, horizon/2 and horizon.
std::vector<std::size_t> default_schedule(std::size_t horizon);

/// Orbit length needed so every sigma_n^k in (schedule, k_list) is defined.
std::size_t required_horizon(std::span<const std::size_t> schedule,
                             std::span<const std::size_t> k_list);

struct MeanSequenceResult {
  MeanTrace means;
  DiagnosticsTrace diagnostics;
};

/// Certified means along the schedule (warm-started from the previous entry)
/// with the ergodic diagnostics. Requires k + n <= orbit.points.size() for
/// every scheduled n and configured k.
MeanSequenceResult mean_sequence(const OrbitTrace& orbit, std::span<const std::size_t> schedule,
                                 std::span<const std::size_t> k_list,
                                 const MeanSequenceOptions& options = {});

struct ProjectionStep {
  Point projection;  // P T^n x
  double distance;   // d(P T^n x, T^n x)
};

/// Throws Unsupported when the map has no analytic fixed set.
std::vector<ProjectionStep> projection_trace(const OrbitTrace& orbit);

/// Worst increase of the projection distances; <= slack means nonincreasing.
ViolationReport check_projection_monotone(std::span<const ProjectionStep> trace,
                                          double slack = tolerance::contract);

/// Membership of T^k x (k >= k0) and of the given means in the half-space
/// F(p, v) = {z : d(p, z) <= d(z, v)}. Witness params hold {k} (or {-1 - i}
/// for the i-th mean); witness points {z}.
ViolationReport halfspace_membership_check(const OrbitTrace& orbit, const Point& p,
                                           const Point& v, std::size_t k0,
                                           std::span<const Point> means = {},
                                           double tol = tolerance::contract);

/// Upper bound on the distance from `target` to the closed convex hull of
/// `points`: greedy geodesic moves toward hull points, at least `depth` rounds.
double hull_gap(const Space& space, const Point& target, std::span<const Point> points,
                std::size_t depth = 12);

/// Random iterated geodesic combinations of `points` (depth `depth`).
std::vector<Point> hull_probes(const Space& space, std::span<const Point> points,
                               std::size_t count, std::size_t depth, std::uint64_t seed);

enum class VerdictStatus { converged, inconclusive };

const char* to_string(VerdictStatus status);

struct Verdict {
  Point limit_candidate;
  double agreement = 0.0;  // d(final mean, final P T^n x), or the Cauchy gap without F(T)
  double residual = 0.0;   // residual at the final scheduled mean
  VerdictStatus status = VerdictStatus::inconclusive;
  double tol_verdict = 1e-2;
  /// First scheduled n from which agreement and residual stay below tol_verdict.
  std::optional<std::size_t> converged_at;
  /// Strong convergence is measured as a surrogate for Delta-convergence.
  std::string surrogate = "strong-convergence surrogate for Delta-mean convergence";
};

inline constexpr double kDefaultVerdictTolerance = 1e-2;

/// `projection` may be empty when F(T) is unknown; the agreement then falls back
/// to d(sigma_N, sigma_M) for the previous scheduled M.
Verdict verdict(const MeanTrace& means, const DiagnosticsTrace& diagnostics,
                std::span<const ProjectionStep> projection,
                double tol_verdict = kDefaultVerdictTolerance);

}  // namespace hadamard
