// Command-line front end: space verification, one-off means, experiments, reports.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hadamard/error.hpp"
#include "hadamard/experiment.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/spaces.hpp"

namespace {

using namespace hadamard;

constexpr int kOk = 0;
constexpr int kViolation = 3;
constexpr int kUsage = 4;

int verify_space(const std::string& descriptor, std::uint64_t seed, double tol) {
  const SpaceHandle space = make_space(descriptor);
  constexpr std::size_t n = 10000;
  const ViolationReport reports[] = {
      check_metric_axioms(*space, seed, n, tol),
      check_geodesic_consistency(*space, seed + 1, n, tol),
      check_cat0_sample(*space, seed + 2, n, tol),
      check_cauchy_schwarz_sample(*space, seed + 3, n, tol),
      check_quasi_inner_identities(*space, seed + 4, n, tol),
      check_q4bar_sample(*space, seed + 5, n, tol),
  };
  bool ok = true;
  std::cout << "space " << space->id() << ", seed " << seed << "\n";
  for (const auto& r : reports) {
    std::cout << r.summary() << "\n";
    ok = ok && r.passed();
  }
  return ok ? kOk : kViolation;
}

std::vector<Point> read_points(const Space& space, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read points file " + path);
  std::vector<Point> points;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> coords;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      for (char& c : tok)
        if (c == ',' || c == '(' || c == ')') c = ' ';
      std::istringstream inner(tok);
      double v;
      while (inner >> v) coords.push_back(v);
      if (!inner.eof()) throw ParseError("malformed coordinate", "points", line_no);
    }
    try {
      points.push_back(space.make_point(std::move(coords)));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), "points", line_no);
    }
  }
  if (points.empty()) throw ParseError("no points in " + path, "points");
  return points;
}

int mean(const std::string& descriptor, const std::string& file, std::uint64_t seed, double tol) {
  const SpaceHandle space = make_space(descriptor);
  auto problem = FrechetProblem::uniform(space, read_points(*space, file));
  KarcherOptions options;
  options.tol = tol;
  options.seed = seed;
  const auto r = karcher_mean(problem, options);
  std::cout << "mean          " << to_string(r.mean) << "\n";
  std::cout << "value         " << format_number(r.certificate.functional_value) << "\n";
  std::cout << "worst gap     " << format_number(r.certificate.worst_gap) << "\n";
  std::cout << "worst slack   " << format_number(r.certificate.worst_slack) << "\n";
  std::cout << "probes        " << r.certificate.probes << "\n";
  std::cout << "solver        " << r.solver << " (" << r.iterations << " iterations)\n";
  return r.certificate.passes() ? kOk : kViolation;
}

int experiment(const std::string& path, ExperimentKind expected, const std::optional<std::uint64_t>& seed,
               const std::optional<double>& tol, const std::optional<std::string>& out,
               const std::optional<std::string>& schedule) {
  ExperimentConfig config = load_config(path);
  if (config.kind != expected)
    throw ParseError(std::string("config describes a ") +
                         (config.kind == ExperimentKind::ergodic ? "map; use 'ergodic'" : "field; use 'semigroup'"),
                     config.kind == ExperimentKind::ergodic ? "map" : "field");
  if (seed) config.seed = *seed;
  if (tol) config.tol_verdict = *tol;
  if (out) config.output = *out;
  std::string text = serialize(config);
  if (schedule) {
    const auto pos = text.find("schedule = ");
    const auto end = text.find('\n', pos);
    text.replace(pos, end - pos, "schedule = " + *schedule);
  }
  // Re-parse so overrides go through the same validation as the file.
  config = parse_config(text);
  const RunReport report = run(config);
  std::cout << format_report(report);
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Karcher-mean ergodic experiments in Hadamard spaces"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double verify_tol = tolerance::contract;
  double solver_tol = 1e-12;
  std::string space, file, config, trace_dir;
  std::optional<std::uint64_t> run_seed;
  std::optional<double> run_tol;
  std::optional<std::string> out, schedule;

  auto* verify = app.add_subcommand("verify-space", "Sample the CAT(0) inequalities on a model space");
  verify->add_option("space", space, "euclidean:<dim>, river, disk[:<margin>] or circle")->required();
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--tol", verify_tol, "Violation tolerance")->capture_default_str();

  auto* mean_cmd = app.add_subcommand("mean", "Karcher mean of the points in a file, one point per line");
  mean_cmd->add_option("space", space, "Space descriptor")->required();
  mean_cmd->add_option("points-file", file, "Points file")->required()->check(CLI::ExistingFile);
  mean_cmd->add_option("--seed", seed, "Certificate probe seed");
  mean_cmd->add_option("--tol", solver_tol, "Solver tolerance")->capture_default_str();

  auto* ergodic = app.add_subcommand("ergodic", "Run an orbit-mean experiment");
  auto* semigroup = app.add_subcommand("semigroup", "Run a continuous-mean experiment");
  for (auto* sub : {ergodic, semigroup}) {
    sub->add_option("config", config, "Experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", run_seed, "Override the config seed");
    sub->add_option("--tol", run_tol, "Override the verdict tolerance");
    sub->add_option("--out", out, "Override the trace directory");
    sub->add_option("--schedule", schedule, "Override the schedule, e.g. \"100, 1000, 10000\"");
  }

  auto* report = app.add_subcommand("report", "Summarize a trace directory");
  report->add_option("trace-dir", trace_dir, "Directory written by ergodic/semigroup")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return verify_space(space, seed, verify_tol);
    if (*mean_cmd) return mean(space, file, seed, solver_tol);
    if (*ergodic) return experiment(config, ExperimentKind::ergodic, run_seed, run_tol, out, schedule);
    if (*semigroup) return experiment(config, ExperimentKind::semigroup, run_seed, run_tol, out, schedule);
    if (*report) {
      std::cout << report_from_traces(trace_dir);
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
