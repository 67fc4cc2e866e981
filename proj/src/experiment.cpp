#include "hadamard/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hadamard/error.hpp"
#include "hadamard/spaces.hpp"
#include "text.hpp"

namespace hadamard {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Entry {
  std::string value;
  std::size_t line;
  std::size_t column;
};

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"space", "map", "field", "start", "N", "T", "step", "r"}},
      {"means", {"schedule", "k_list", "s_list"}},
      {"tolerances", {"verdict", "solver"}},
      {"output", {"seed", "path"}},
  };
  return keys;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::string section = "experiment";
  std::istringstream in(text);
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    const std::size_t indent = raw.find_first_not_of(" \t") + 1;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", "", line_no, indent);
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) throw ParseError("unknown section [" + section + "]", "", line_no, indent);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", "", line_no, indent);
    const std::string key(text::trim(line.substr(0, eq)));
    if (!known_keys().at(section).count(key))
      throw ParseError("unknown key in [" + section + "]", key, line_no, indent);
    const std::string_view value = text::trim(line.substr(eq + 1));
    const std::size_t column = value.empty() ? indent + eq + 1 : static_cast<std::size_t>(value.data() - raw.data()) + 1;
    const std::string qualified = section + "." + key;
    if (entries.count(qualified)) throw ParseError("duplicate key", key, line_no, indent);
    entries[qualified] = Entry{std::string(value), line_no, column};
  }

  auto find = [&](const std::string& q) -> const Entry* {
    auto it = entries.find(q);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto key_of = [](const std::string& q) { return q.substr(q.find('.') + 1); };
  auto fail = [&](const std::string& q, const std::string& message) -> ParseError {
    const Entry* e = find(q);
    return ParseError(message, key_of(q), e ? e->line : 0, e ? e->column : 0);
  };
  auto require = [&](const std::string& q) -> const Entry& {
    const Entry* e = find(q);
    if (!e) throw ParseError("missing required key", key_of(q));
    return *e;
  };
  auto number = [&](const std::string& q) {
    auto v = text::to_double(require(q).value);
    if (!v || !std::isfinite(*v)) throw fail(q, "malformed number '" + require(q).value + "'");
    return *v;
  };
  auto count = [&](const std::string& q) {
    auto v = text::to_unsigned(require(q).value);
    if (!v) throw fail(q, "expected a nonnegative integer, got '" + require(q).value + "'");
    return static_cast<std::size_t>(*v);
  };
  auto list = [&](const std::string& q) {
    auto v = text::to_tuple(require(q).value);
    if (!v) throw fail(q, "malformed number list '" + require(q).value + "'");
    return *v;
  };

  auto rethrow = [&](const std::string& q, const Error& e) -> ParseError {
    const auto* pe = dynamic_cast<const ParseError*>(&e);
    return fail(q, pe ? pe->message() : std::string(e.what()));
  };

  ExperimentConfig c;
  c.space = require("experiment.space").value;
  SpaceHandle space;
  try {
    space = make_space(c.space);
  } catch (const Error& e) {
    throw rethrow("experiment.space", e);
  }

  const bool has_map = find("experiment.map"), has_field = find("experiment.field");
  if (has_map == has_field) throw ParseError("exactly one of 'map' and 'field' is required", has_map ? "field" : "map");
  c.kind = has_map ? ExperimentKind::ergodic : ExperimentKind::semigroup;

  auto start = list("experiment.start");
  if (start.size() != space->dim() || !space->contains(start))
    throw fail("experiment.start", "start is not a point of " + space->id());
  c.start = std::move(start);

  if (c.kind == ExperimentKind::ergodic) {
    c.map = require("experiment.map").value;
    try {
      (void)parse_mapping(space, c.map);
    } catch (const Error& e) {
      throw rethrow("experiment.map", e);
    }
    c.horizon_n = count("experiment.N");
    if (c.horizon_n < 1) throw fail("experiment.N", "N must be at least 1");
    for (const char* q : {"experiment.T", "experiment.step", "experiment.r", "means.s_list"})
      if (find(q)) throw fail(q, "not used by ergodic experiments");
  } else {
    c.field = require("experiment.field").value;
    if (find("experiment.step")) c.step = number("experiment.step");
    if (find("experiment.r")) c.r = number("experiment.r");
    try {
      (void)SemigroupSpec::make(space, VectorField::parse(c.field), c.step);
    } catch (const Error& e) {
      throw rethrow("experiment.field", e);
    }
    c.horizon_t = number("experiment.T");
    if (!(c.horizon_t > 0.0)) throw fail("experiment.T", "T must be positive");
    if (!(c.r > 0.0)) throw fail("experiment.r", "r must be positive");
    for (const char* q : {"experiment.N", "means.k_list"})
      if (find(q)) throw fail(q, "not used by semigroup experiments");
  }

  if (const Entry* e = find("means.schedule"); e && e->value != "default") {
    c.schedule = list("means.schedule");
    for (std::size_t i = 0; i < c.schedule.size(); ++i) {
      const double v = c.schedule[i];
      const bool integral = c.kind == ExperimentKind::semigroup || v == std::floor(v);
      const double cap = c.kind == ExperimentKind::ergodic ? static_cast<double>(c.horizon_n) : c.horizon_t;
      if (!(v > 0.0) || !integral || v > cap || (i > 0 && !(v > c.schedule[i - 1])))
        throw fail("means.schedule", "schedule must increase within (0, horizon]" +
                                         std::string(c.kind == ExperimentKind::ergodic ? " with integer entries" : ""));
    }
  }
  if (find("means.k_list")) {
    c.k_list.clear();
    for (double k : list("means.k_list")) {
      if (!(k >= 0.0) || k != std::floor(k)) throw fail("means.k_list", "shifts must be nonnegative integers");
      c.k_list.push_back(static_cast<std::size_t>(k));
    }
  }
  if (find("means.s_list")) {
    c.s_list = list("means.s_list");
    for (double s : c.s_list)
      if (!(s >= 0.0)) throw fail("means.s_list", "shifts must be nonnegative");
  }
  if (find("tolerances.verdict")) c.tol_verdict = number("tolerances.verdict");
  if (find("tolerances.solver")) c.tol_solver = number("tolerances.solver");
  if (!(c.tol_verdict > 0.0)) throw fail("tolerances.verdict", "tolerance must be positive");
  if (!(c.tol_solver > 0.0)) throw fail("tolerances.solver", "tolerance must be positive");
  if (find("output.seed")) {
    auto v = text::to_unsigned(require("output.seed").value);
    if (!v) throw fail("output.seed", "malformed seed '" + require("output.seed").value + "'");
    c.seed = *v;
  }
  if (find("output.path")) c.output = require("output.path").value;
  if (c.output.empty()) throw fail("output.path", "empty output path");
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream out;
  const bool ergodic = c.kind == ExperimentKind::ergodic;
  out << "[experiment]\n";
  out << "space = " << c.space << "\n";
  out << (ergodic ? "map = " + c.map : "field = " + c.field) << "\n";
  out << "start = (" << join(c.start) << ")\n";
  if (ergodic) {
    out << "N = " << c.horizon_n << "\n";
  } else {
    out << "T = " << format_number(c.horizon_t) << "\n";
    out << "step = " << format_number(c.step) << "\n";
    out << "r = " << format_number(c.r) << "\n";
  }
  out << "\n[means]\n";
  out << "schedule = " << (c.schedule.empty() ? "default" : join(c.schedule)) << "\n";
  if (ergodic) {
    out << "k_list = ";
    for (std::size_t i = 0; i < c.k_list.size(); ++i) out << (i ? ", " : "") << c.k_list[i];
    out << "\n";
  } else {
    out << "s_list = " << join(c.s_list) << "\n";
  }
  out << "\n[tolerances]\n";
  out << "verdict = " << format_number(c.tol_verdict) << "\n";
  out << "solver = " << format_number(c.tol_solver) << "\n";
  out << "\n[output]\n";
  out << "seed = " << c.seed << "\n";
  out << "path = " << c.output << "\n";
  return out.str();
}

std::vector<std::size_t> ergodic_schedule(const ExperimentConfig& c) {
  if (c.schedule.empty()) return default_schedule(c.horizon_n);
  std::vector<std::size_t> out;
  for (double v : c.schedule) out.push_back(static_cast<std::size_t>(v));
  return out;
}

std::vector<double> semigroup_schedule(const ExperimentConfig& c) {
  if (!c.schedule.empty()) return c.schedule;
  // Powers of ten inside the horizon, then T/8, T/2 and T.
  const double T = c.horizon_t;
  const double min_window = 8.0 * c.step;
  std::set<double> s{T / 8.0, T / 2.0, T};
  for (double t = 1.0; t < T; t *= 10.0) s.insert(t);
  std::vector<double> out;
  for (double t : s) {
    const double snapped = std::round(t / c.step) * c.step;
    if (snapped >= min_window && (out.empty() || snapped > out.back())) out.push_back(snapped);
  }
  if (out.empty() || out.back() != T) out.push_back(T);
  return out;
}

ErgodicRun run_ergodic(const ExperimentConfig& c) {
  if (c.kind != ExperimentKind::ergodic) throw DomainError("not an ergodic experiment");
  SpaceHandle space = make_space(c.space);
  MappingSpec map = parse_mapping(space, c.map);
  const auto schedule = ergodic_schedule(c);
  const std::size_t horizon = std::max(c.horizon_n, required_horizon(schedule, c.k_list));
  ErgodicRun run{generate_orbit(map, space->make_point(c.start), horizon), {}, {}, {}};
  MeanSequenceOptions options;
  options.tol = c.tol_solver;
  options.seed = c.seed;
  run.means = mean_sequence(run.orbit, schedule, c.k_list, options);
  if (map.fixed_set()) run.projection = projection_trace(run.orbit);
  run.verdict = verdict(run.means.means, run.means.diagnostics, run.projection, c.tol_verdict);
  return run;
}

SemigroupRun run_semigroup(const ExperimentConfig& c) {
  if (c.kind != ExperimentKind::semigroup) throw DomainError("not a semigroup experiment");
  SpaceHandle space = make_space(c.space);
  auto spec = SemigroupSpec::make(space, VectorField::parse(c.field), c.step);
  const auto t_list = semigroup_schedule(c);
  double s_max = 0.0;
  for (double s : c.s_list) s_max = std::max(s_max, s);
  SemigroupRun run{spec, flow(spec, space->make_point(c.start), t_list.back() + s_max), {}, {}, {}};
  KarcherOptions options;
  options.tol = c.tol_solver;
  options.seed = c.seed;
  run.diagnostics = semigroup_diagnostics(spec, run.curve, t_list, c.s_list, c.r, options);
  run.axioms = check_semigroup_axioms(spec, c.seed, 200);
  run.verdict = semigroup_verdict(run.diagnostics, c.tol_verdict);
  return run;
}

namespace {

std::ofstream open_trace(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_trace(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_verdict(std::ofstream& out, const Verdict& v) {
  out << "key,value\n";
  out << "status," << to_string(v.status) << "\n";
  out << "agreement," << format_number(v.agreement) << "\n";
  out << "residual," << format_number(v.residual) << "\n";
  out << "tol_verdict," << format_number(v.tol_verdict) << "\n";
  out << "converged_at," << (v.converged_at ? std::to_string(*v.converged_at) : "none") << "\n";
  for (std::size_t i = 0; i < v.limit_candidate.dim(); ++i)
    out << "limit_" << i << "," << format_number(v.limit_candidate[i]) << "\n";
  out << "surrogate," << v.surrogate << "\n";
}

}  // namespace

std::vector<fs::path> emit_traces(const ErgodicRun& run, const fs::path& dir) {
  prepare_dir(dir);
  std::vector<fs::path> files;
  const auto& means = run.means.means;
  const auto& diag = run.means.diagnostics;
  const std::size_t dim = run.orbit.start.dim();

  const fs::path mpath = dir / "means.csv";
  auto m = open_trace(mpath);
  m << "n";
  for (std::size_t i = 0; i < dim; ++i) m << ",sigma_" << i;
  m << ",residual";
  for (auto k : means.k_list) m << ",shift_gap_k" << k;
  m << ",proj_dist,cert_gap,frechet_value\n";
  for (std::size_t i = 0; i < means.entries.size(); ++i) {
    const auto& e = means.entries[i];
    const auto& r = diag.records[i];
    m << e.n;
    for (std::size_t j = 0; j < dim; ++j) m << "," << format_number(e.mean[j]);
    m << "," << format_number(r.residual);
    for (double g : r.shift_gaps) m << "," << format_number(g);
    m << "," << format_number(r.orbit_proj_dist) << "," << format_number(r.cert_gap) << ","
      << format_number(r.frechet_value) << "\n";
  }
  close_trace(m, mpath);
  files.push_back(mpath);

  if (!run.projection.empty()) {
    const fs::path ppath = dir / "projection.csv";
    auto p = open_trace(ppath);
    p << "n";
    for (std::size_t i = 0; i < dim; ++i) p << ",proj_" << i;
    p << ",dist\n";
    for (std::size_t n = 0; n < run.projection.size(); ++n) {
      p << n;
      for (std::size_t j = 0; j < dim; ++j) p << "," << format_number(run.projection[n].projection[j]);
      p << "," << format_number(run.projection[n].distance) << "\n";
    }
    close_trace(p, ppath);
    files.push_back(ppath);
  }

  const fs::path vpath = dir / "verdict.csv";
  auto v = open_trace(vpath);
  write_verdict(v, run.verdict);
  v << "kind,ergodic\n";
  v << "map," << '"' << run.orbit.map.description() << '"' << "\n";
  v << "horizon," << run.orbit.horizon() << "\n";
  v << "worst_cert_gap," << format_number(means.worst_certificate_gap()) << "\n";
  v << "worst_cert_slack," << format_number(means.worst_certificate_slack()) << "\n";
  close_trace(v, vpath);
  files.push_back(vpath);
  return files;
}

std::vector<fs::path> emit_traces(const SemigroupRun& run, const fs::path& dir) {
  prepare_dir(dir);
  std::vector<fs::path> files;
  const auto& diag = run.diagnostics;
  const std::size_t dim = run.curve.start.dim();

  const fs::path mpath = dir / "means.csv";
  auto m = open_trace(mpath);
  m << "T";
  for (std::size_t i = 0; i < dim; ++i) m << ",mean_" << i;
  m << ",residual_r";
  for (double s : diag.s_list) m << ",shift_gap_s" << format_number(s);
  m << ",proj_dist,cert_gap\n";
  for (const auto& r : diag.records) {
    m << format_number(r.t);
    for (std::size_t j = 0; j < dim; ++j) m << "," << format_number(r.mean[j]);
    m << "," << format_number(r.residual_r);
    for (double g : r.shift_gaps) m << "," << format_number(g);
    m << "," << format_number(r.proj_dist) << "," << format_number(r.cert_gap) << "\n";
  }
  close_trace(m, mpath);
  files.push_back(mpath);

  double worst_gap = INFINITY, worst_slack = INFINITY;
  for (const auto& r : diag.records) {
    worst_gap = std::min(worst_gap, r.cert_gap);
    worst_slack = std::min(worst_slack, r.certificate.worst_slack);
  }
  const fs::path vpath = dir / "verdict.csv";
  auto v = open_trace(vpath);
  write_verdict(v, run.verdict);
  v << "kind,semigroup\n";
  v << "field," << '"' << run.spec.field.describe() << '"' << "\n";
  v << "step," << format_number(run.spec.step) << "\n";
  v << "r," << format_number(diag.r) << "\n";
  v << "orbit_residual," << format_number(diag.records.back().orbit_residual) << "\n";
  v << "projection_monotone_worst," << format_number(diag.projection_monotone.worst_violation) << "\n";
  v << "axioms_worst," << format_number(run.axioms.worst_violation) << "\n";
  v << "axiom_contraction_slack," << format_number(1.0 + run.spec.step * run.spec.step) << "\n";
  v << "worst_cert_gap," << format_number(worst_gap) << "\n";
  v << "worst_cert_slack," << format_number(worst_slack) << "\n";
  close_trace(v, vpath);
  files.push_back(vpath);
  return files;
}

bool RunReport::invariants_hold() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const auto& c) { return c.passed; });
}

int RunReport::exit_code() const {
  if (!invariants_hold()) return 3;
  return verdict.status == VerdictStatus::converged ? 0 : 2;
}

RunReport run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.kind = config.kind;
  const double eps = tolerance::certificate;
  if (config.kind == ExperimentKind::ergodic) {
    const auto r = run_ergodic(config);
    report.verdict = r.verdict;
    report.worst_cert_gap = r.means.means.worst_certificate_gap();
    const double slack = r.means.means.worst_certificate_slack();
    report.invariants.push_back({"certificate gap", report.worst_cert_gap >= -eps, report.worst_cert_gap});
    report.invariants.push_back({"certificate slack", slack >= -eps, slack});
    const double replay = orbit_replay_error(r.orbit);
    report.invariants.push_back({"orbit replay", replay <= 1e-12, replay});
    if (!r.projection.empty()) {
      const auto mono = check_projection_monotone(r.projection);
      report.invariants.push_back({"projection monotone", mono.passed(), mono.worst_violation});
      report.invariants.push_back({"fejer orbit", r.orbit.fejer.passed(), r.orbit.fejer.worst_violation});
      double bound = INFINITY;
      for (const auto& rec : r.means.diagnostics.records) bound = std::min(bound, rec.boundedness_slack);
      report.invariants.push_back({"mean boundedness", bound >= -eps, bound});
    }
    report.trace_files = emit_traces(r, config.output);
  } else {
    const auto r = run_semigroup(config);
    report.verdict = r.verdict;
    double gap = INFINITY, slack = INFINITY;
    for (const auto& rec : r.diagnostics.records) {
      gap = std::min(gap, rec.cert_gap);
      slack = std::min(slack, rec.certificate.worst_slack);
    }
    report.worst_cert_gap = gap;
    report.invariants.push_back({"certificate gap", gap >= -eps, gap});
    report.invariants.push_back({"certificate slack", slack >= -eps, slack});
    if (r.diagnostics.has_projection) {
      const auto& mono = r.diagnostics.projection_monotone;
      report.invariants.push_back({"projection monotone", mono.passed(), mono.worst_violation});
    }
    report.invariants.push_back({"semigroup axioms, contraction slack 1+h^2 = " +
                                     format_number(1.0 + r.spec.step * r.spec.step),
                                 r.axioms.passed(), r.axioms.worst_violation});
    report.trace_files = emit_traces(r, config.output);
  }
  report.final_residual = report.verdict.residual;
  report.agreement = report.verdict.agreement;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  out << "kind          " << (r.kind == ExperimentKind::ergodic ? "ergodic" : "semigroup") << "\n";
  out << "status        " << to_string(r.verdict.status) << "\n";
  out << "limit         " << to_string(r.verdict.limit_candidate) << "\n";
  out << "agreement     " << format_number(r.agreement) << "  (tol " << format_number(r.verdict.tol_verdict) << ")\n";
  out << "residual      " << format_number(r.final_residual) << "\n";
  if (r.verdict.converged_at) out << "converged at  " << *r.verdict.converged_at << "\n";
  out << "worst cert    " << format_number(r.worst_cert_gap) << "\n";
  out << "note          " << r.verdict.surrogate << "\n";
  for (const auto& c : r.invariants)
    out << "invariant     " << c.name << ": " << (c.passed ? "ok" : "VIOLATED") << " (" << format_number(c.value) << ")\n";
  for (const auto& f : r.trace_files) out << "trace         " << f.string() << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_seconds);
  out << "wall          " << buf << " s\n";
  return out.str();
}

std::string report_from_traces(const fs::path& dir) {
  const fs::path vpath = dir / "verdict.csv";
  const fs::path mpath = dir / "means.csv";
  std::ifstream v(vpath), m(mpath);
  if (!v) throw IoError("cannot read " + vpath.string());
  if (!m) throw IoError("cannot read " + mpath.string());
  std::ostringstream out;
  std::string line;
  std::getline(v, line);
  while (std::getline(v, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("malformed row '" + line + "'", "verdict.csv");
    std::string key = line.substr(0, comma);
    key.resize(std::max<std::size_t>(key.size(), 26), ' ');
    out << key << line.substr(comma + 1) << "\n";
  }
  std::string header, last;
  std::getline(m, header);
  std::size_t rows = 0;
  while (std::getline(m, line))
    if (!line.empty()) ++rows, last = line;
  out << "schedule points           " << rows << "\n";
  out << "columns                   " << header << "\n";
  if (rows) out << "last row                  " << last << "\n";
  return out.str();
}

}  // namespace hadamard
