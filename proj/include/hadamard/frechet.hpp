#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/geometry.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

/// Weighted Frechet functional F(x) = sum_i w_i d^2(anchor_i, x).
struct FrechetProblem {
  SpaceHandle space;
  std::vector<Point> anchors;
  std::vector<double> weights;  // nonnegative, sums to 1

  static FrechetProblem uniform(SpaceHandle space, std::vector<Point> anchors);
  /// Weights are normalized; throws on negative or all-zero weights.
  static FrechetProblem weighted(SpaceHandle space, std::vector<Point> anchors,
                                 std::vector<double> weights);

  std::size_t size() const noexcept { return anchors.size(); }
};

/// Variance-inequality certificate for a candidate minimizer:
///   gap(y)   = F(y) - F(candidate) - d^2(candidate, y)   (must be >= 0 at the minimizer)
///   slack(y) = sum_i w_i d(anchor_i, y) - d(candidate, y) (must be >= 0 at the minimizer)
/// `worst_gap` / `worst_slack` are minima over all probes.
struct MeanCertificate {
  Point candidate;
  double functional_value = 0.0;
  double worst_gap = 0.0;
  double worst_slack = 0.0;
  std::size_t probes = 0;

  bool passes(double eps = tolerance::certificate) const noexcept {
    return worst_gap >= -eps && worst_slack >= -eps;
  }
};

inline constexpr std::size_t kDefaultProbes = 256;

double frechet_value(const FrechetProblem& problem, const Point& x);

/// Probes are: up to half of `n_probes` anchors (evenly strided), then random
/// points split between space samples and geodesic points near the candidate,
/// then every point of `extra_probes`.
MeanCertificate certify_mean(const FrechetProblem& problem, const Point& candidate,
                             std::size_t n_probes = kDefaultProbes, std::uint64_t seed = 0,
                             std::span<const Point> extra_probes = {});

/// sum_i w_i d(anchor_i, y) - d(candidate, y).
double mean_distance_bound_check(const FrechetProblem& problem, const Point& candidate,
                                 const Point& y);

enum class KarcherMethod {
  automatic,  // closed form / structured solver when the space has one
  generic,    // incremental proximal sweeps + geodesic line-search polish
};

struct KarcherOptions {
  double tol = 1e-12;
  KarcherMethod method = KarcherMethod::automatic;
  std::optional<Point> initial;  // defaults to the first anchor
  std::size_t max_sweeps = 10000;
  std::size_t n_probes = kDefaultProbes;
  std::uint64_t seed = 0;
  std::vector<Point> extra_probes;
};

struct KarcherResult {
  Point mean;
  MeanCertificate certificate;
  std::size_t iterations = 0;
  std::string solver;
};

/// Unique minimizer of the Frechet functional with its certificate.
/// Throws SolverFailure when the solver does not converge or the certificate
/// fails after one retry at a tighter tolerance.
KarcherResult karcher_mean(const FrechetProblem& problem, const KarcherOptions& options = {});

inline KarcherResult karcher_mean(const FrechetProblem& problem, double tol) {
  KarcherOptions options;
  options.tol = tol;
  return karcher_mean(problem, options);
}

}  // namespace hadamard
