#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadamard/ergodic.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

/// Single-valued vector field A generating the flow x'(t) = -A(x(t)).
///
/// Euclidean kinds: skew2d (A = J, the quarter-turn), decay (A = rate * I),
/// quadratic (A = Q, gradient of x^T Q x / 2). Disk kinds: disk_rotation
/// (Killing field omega * J z) and disk_decay (A = -rate * log_z(0), the
/// gradient of rate * d^2(0, .) / 2).
class VectorField {
 public:
  enum class Kind { skew2d, decay, quadratic, disk_rotation, disk_decay };

  static VectorField skew2d();
  static VectorField decay(double rate);
  /// Row-major symmetric matrix; throws when it is not square or not symmetric.
  static VectorField quadratic(std::vector<double> matrix);
  static VectorField disk_rotation(double omega);
  static VectorField disk_decay(double rate);
  /// "skew2d", "decay:<rate>", "grad:quadratic:<m11,m12,...>",
  /// "disk-rotation:<omega>", "disk-decay:<rate>".
  static VectorField parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return parameter_; }
  const std::vector<double>& matrix() const noexcept { return matrix_; }
  bool on_disk() const noexcept { return kind_ == Kind::disk_rotation || kind_ == Kind::disk_decay; }
  /// Required ambient dimension; 0 means any.
  std::size_t required_dim() const noexcept;

  /// Coordinate velocity -A(x) of the Cauchy problem.
  std::vector<double> velocity(std::span<const double> x) const;
  /// A(x) in an orthonormal frame (equal to coordinates in Euclidean space).
  std::vector<double> value(std::span<const double> x) const;

  /// Singularities A^{-1}(0) in `space` when they form a known convex set.
  std::optional<ConvexSetSpec> singularities(const Space& space) const;

  std::string describe() const;

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  VectorField(Kind kind, double parameter, std::vector<double> matrix);

  Kind kind_;
  double parameter_;
  std::vector<double> matrix_;
};

struct SemigroupSpec {
  SpaceHandle space;
  VectorField field;
  double step = 1e-2;
  int order = 4;  // classical Runge-Kutta

  /// Validates space/field compatibility and step > 0.
  static SemigroupSpec make(SpaceHandle space, VectorField field, double step = 1e-2);
};

/// Sampled trajectory t -> S(t)x on the grid 0 = t_0 < ... < t_M = T with
/// spacing `step` (the last interval may be shorter).
struct CurveTrace {
  Point start;
  std::vector<double> times;
  std::vector<Point> points;
  double step = 0.0;

  double horizon() const noexcept { return times.empty() ? 0.0 : times.back(); }
  /// Index of the grid node at time t; throws DomainError when t is off-grid.
  std::size_t node_at(double t) const;
};

/// Integrates x' = -A(x) with RK4. Throws DomainError on disk-margin excursion
/// and InvariantViolation when a monotone field's flow moves away from its
/// singularity (step instability).
CurveTrace flow(const SemigroupSpec& spec, const Point& start, double horizon);

/// S(t)x without storing the trajectory.
Point evolve(const SemigroupSpec& spec, const Point& x, double t);

/// Weighted Frechet problem of the window [s, s + T_eval] with composite
/// trapezoid weights normalized to one. Requires at least 8 grid nodes.
FrechetProblem window_problem(const SpaceHandle& space, const CurveTrace& curve, double t_eval,
                              double s);

struct ContinuousMean {
  Point mean;
  MeanCertificate certificate;
};

ContinuousMean continuous_mean(const SpaceHandle& space, const CurveTrace& curve, double t_eval,
                               double s, const KarcherOptions& options = {});

struct SemigroupRecord {
  double t = 0.0;
  Point mean;                          // sigma_T
  MeanCertificate certificate;
  std::vector<Point> shifted;          // sigma_T^s, parallel to s_list
  double residual_r = 0.0;             // d(sigma_T, S(r) sigma_T)
  std::vector<double> shift_gaps;      // d(sigma_T, sigma_T^s)
  double proj_dist = 0.0;              // d(P S(T)x, S(T)x); NaN when unknown
  double orbit_residual = 0.0;         // d(S(T)x, S(r) S(T)x)
  double cert_gap = 0.0;               // worst certificate gap among the means at T
};

struct SemigroupDiagnostics {
  SpaceHandle space;
  std::vector<double> s_list;
  double r = 1.0;
  std::vector<SemigroupRecord> records;
  bool has_projection = false;
  std::optional<Point> limit_projection;  // P S(horizon) x
  /// d(P S(t)x, S(t)x) nonincreasing over every grid node.
  ViolationReport projection_monotone;
};

/// Means and diagnostics at each T in `t_list` (ascending). The curve must reach
/// max(T) + max(s).
SemigroupDiagnostics semigroup_diagnostics(const SemigroupSpec& spec, const CurveTrace& curve,
                                           std::span<const double> t_list,
                                           std::span<const double> s_list, double r,
                                           const KarcherOptions& options = {});

/// Verdict on the last record: agreement d(sigma_T, P S(T) x) and residual_r.
Verdict semigroup_verdict(const SemigroupDiagnostics& diagnostics,
                          double tol_verdict = kDefaultVerdictTolerance);

/// Semigroup axioms on sampled x, y, grid-aligned t, s:
///   (i) S(0)x = x, (ii) S(t+s)x = S(t)S(s)x, (iii) d(S(t+h)x, S(t)x) <= h * speed,
///   (iv) d(S(t)x, S(t)y) <= d(x,y) (1 + h^2).
/// Witness params hold {axiom, t, s}.
ViolationReport check_semigroup_axioms(const SemigroupSpec& spec, std::uint64_t seed,
                                       std::size_t n_samples);

/// <A(x) - A(y), x - y> >= 0 (Euclidean) or
/// <A(x), log_x y> + <A(y), log_y x> <= 0 (disk), as a violation amount.
ViolationReport check_field_monotone(const SemigroupSpec& spec, std::uint64_t seed,
                                     std::size_t n_samples, double tol = tolerance::contract);

}  // namespace hadamard
