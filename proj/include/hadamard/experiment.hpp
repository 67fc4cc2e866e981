#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/ergodic.hpp"
#include "hadamard/semigroup.hpp"

namespace hadamard {

enum class ExperimentKind { ergodic, semigroup };

/// Flat key = value experiment description with [section] headers:
///
///   [experiment]  space, map | field, start, N | T, step, r
///   [means]       schedule, k_list, s_list
///   [tolerances]  verdict, solver
///   [output]      seed, path
///
/// Keys before the first header belong to [experiment].
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ergodic;
  std::string space;
  std::string map;    // ergodic
  std::string field;  // semigroup
  std::vector<double> start;
  std::size_t horizon_n = 0;  // ergodic
  double horizon_t = 0.0;     // semigroup
  double step = 1e-2;
  double r = 1.0;
  /// Empty means the default schedule. Ergodic entries are integers.
  std::vector<double> schedule;
  std::vector<std::size_t> k_list{1, 8};
  std::vector<double> s_list{1.0, 8.0};
  double tol_verdict = kDefaultVerdictTolerance;
  double tol_solver = 1e-12;
  std::uint64_t seed = 0;
  std::string output = "traces";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ParseError with line/column and key on malformed input, unknown
/// keys or kinds, and missing required keys.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize(const ExperimentConfig& config);

/// Schedule actually used by `run` (explicit list or the kind's default).
std::vector<std::size_t> ergodic_schedule(const ExperimentConfig& config);
std::vector<double> semigroup_schedule(const ExperimentConfig& config);

struct InvariantCheck {
  std::string name;
  bool passed = true;
  double value = 0.0;
};

struct RunReport {
  ExperimentKind kind = ExperimentKind::ergodic;
  Verdict verdict;
  double final_residual = 0.0;
  double agreement = 0.0;
  double worst_cert_gap = 0.0;
  std::vector<InvariantCheck> invariants;
  std::vector<std::filesystem::path> trace_files;
  double wall_seconds = 0.0;

  bool invariants_hold() const;
  /// 0 converged, 2 inconclusive, 3 invariant violation.
  int exit_code() const;
};

/// Full in-memory results of one experiment, ready to be persisted.
struct ErgodicRun {
  OrbitTrace orbit;
  MeanSequenceResult means;
  std::vector<ProjectionStep> projection;
  Verdict verdict;
};

struct SemigroupRun {
  SemigroupSpec spec;
  CurveTrace curve;
  SemigroupDiagnostics diagnostics;
  /// Sampled axioms (i)-(iv); (iv) is checked with slack factor 1 + step^2.
  ViolationReport axioms;
  Verdict verdict;
};

ErgodicRun run_ergodic(const ExperimentConfig& config);
SemigroupRun run_semigroup(const ExperimentConfig& config);

/// Writes means.csv, projection.csv (when F(T) is known) and verdict.csv.
std::vector<std::filesystem::path> emit_traces(const ErgodicRun& run,
                                               const std::filesystem::path& dir);
/// Writes means.csv and verdict.csv.
std::vector<std::filesystem::path> emit_traces(const SemigroupRun& run,
                                               const std::filesystem::path& dir);

/// Runs the experiment, persists its traces under config.output and reports.
RunReport run(const ExperimentConfig& config);

/// Rebuilds a report summary from a trace directory written by `run`.
std::string report_from_traces(const std::filesystem::path& dir);

std::string format_report(const RunReport& report);

/// Round-trip decimal formatting used in every trace file.
std::string format_number(double v);

}  // namespace hadamard
