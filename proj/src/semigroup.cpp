#include "hadamard/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hadamard/error.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/poincare_disk.hpp"
#include "text.hpp"

namespace hadamard {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// Gaussian elimination with partial pivoting.
bool singular(std::vector<double> m, std::size_t n) {
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return true;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (std::abs(m[piv * n + c]) <= 1e-12 * scale) return true;
    for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return false;
}

// Fields whose flow must not move away from the origin.
bool origin_attracting(const VectorField& f) {
  switch (f.kind()) {
    case VectorField::Kind::skew2d:
    case VectorField::Kind::quadratic:
    case VectorField::Kind::disk_rotation:
      return true;
    case VectorField::Kind::decay:
    case VectorField::Kind::disk_decay:
      return f.parameter() >= 0.0;
  }
  return false;
}

std::vector<double> rk4_step(const VectorField& field, const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  std::vector<double> tmp(n);
  auto k1 = field.velocity(x);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  auto k2 = field.velocity(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  auto k3 = field.velocity(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  auto k4 = field.velocity(tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Number of steps covering [0, t]: exact multiples of h do not gain a sliver step.
std::size_t step_count(double t, double h) {
  const double q = t / h;
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, q)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(q));
}

// Integrates from x over [0, t], calling visit(i, time, coords) at every node.
template <typename Visit>
void integrate(const SemigroupSpec& spec, const Point& x, double t, Visit&& visit) {
  const Space& space = *spec.space;
  space.require(x);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("flow time must be finite and nonnegative");
  const std::size_t steps = step_count(t, spec.step);
  const bool guard = origin_attracting(spec.field);
  std::vector<double> cur = x.coords;
  visit(0, 0.0, cur);
  double prev_norm = norm(cur);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t0 = static_cast<double>(i - 1) * spec.step;
    const double t1 = i == steps ? t : static_cast<double>(i) * spec.step;
    cur = rk4_step(spec.field, cur, t1 - t0);
    if (!space.contains(cur))
      throw DomainError("flow left " + space.id() + " at t=" + fmt(t1));
    const double nrm = norm(cur);
    if (guard && nrm > prev_norm * (1.0 + 1e-9) + 1e-300)
      throw InvariantViolation("flow moves away from the singularity at t=" + fmt(t1) +
                               "; the step is unstable for this field");
    prev_norm = nrm;
    visit(i, t1, cur);
  }
}

}  // namespace

VectorField::VectorField(Kind kind, double parameter, std::vector<double> matrix)
    : kind_(kind), parameter_(parameter), matrix_(std::move(matrix)) {
  if (!std::isfinite(parameter_)) throw DomainError("vector field parameter must be finite");
}

VectorField VectorField::skew2d() { return VectorField(Kind::skew2d, 1.0, {}); }
VectorField VectorField::decay(double rate) { return VectorField(Kind::decay, rate, {}); }
VectorField VectorField::disk_rotation(double omega) { return VectorField(Kind::disk_rotation, omega, {}); }
VectorField VectorField::disk_decay(double rate) { return VectorField(Kind::disk_decay, rate, {}); }

VectorField VectorField::quadratic(std::vector<double> matrix) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix.size()))));
  if (n == 0 || n * n != matrix.size()) throw DomainError("quadratic field needs a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix[i * n + j])) throw DomainError("quadratic field entry is not finite");
      if (matrix[i * n + j] != matrix[j * n + i]) throw DomainError("quadratic field matrix must be symmetric");
    }
  return VectorField(Kind::quadratic, 0.0, std::move(matrix));
}

VectorField VectorField::parse(const std::string& raw) {
  const std::string_view s = text::trim(raw);
  const std::string key = "field";
  auto number = [&](std::string_view tail) {
    auto v = text::to_double(tail);
    if (!v) throw ParseError("malformed number in field '" + std::string(s) + "'", key);
    return *v;
  };
  try {
    if (s == "skew2d") return skew2d();
    if (text::starts_with(s, "decay:")) return decay(number(s.substr(6)));
    if (text::starts_with(s, "disk-rotation:")) return disk_rotation(number(s.substr(14)));
    if (text::starts_with(s, "disk-decay:")) return disk_decay(number(s.substr(11)));
    if (text::starts_with(s, "grad:quadratic:")) {
      auto entries = text::to_tuple(s.substr(15));
      if (!entries) throw ParseError("malformed matrix in field '" + std::string(s) + "'", key);
      return quadratic(std::move(*entries));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), key);
  }
  throw ParseError("unknown vector field '" + std::string(s) + "'", key);
}

std::size_t VectorField::required_dim() const noexcept {
  switch (kind_) {
    case Kind::skew2d:
    case Kind::disk_rotation:
    case Kind::disk_decay:
      return 2;
    case Kind::quadratic:
      return static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix_.size()))));
    case Kind::decay:
      return 0;
  }
  return 0;
}

std::vector<double> VectorField::velocity(std::span<const double> x) const {
  const std::size_t n = x.size();
  std::vector<double> v(n, 0.0);
  switch (kind_) {
    case Kind::skew2d:
      // A = J, J(x, y) = (-y, x).
      v[0] = x[1];
      v[1] = -x[0];
      break;
    case Kind::decay:
      for (std::size_t i = 0; i < n; ++i) v[i] = -parameter_ * x[i];
      break;
    case Kind::quadratic:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i] -= matrix_[i * n + j] * x[j];
      break;
    case Kind::disk_rotation:
      v[0] = parameter_ * x[1];
      v[1] = -parameter_ * x[0];
      break;
    case Kind::disk_decay: {
      const double r = norm(x);
      if (r == 0.0) break;
      const double speed = parameter_ * std::atanh(r) * (1.0 - r * r) / r;
      v[0] = -speed * x[0];
      v[1] = -speed * x[1];
      break;
    }
  }
  return v;
}

std::vector<double> VectorField::value(std::span<const double> x) const {
  auto v = velocity(x);
  const double scale = on_disk() ? -PoincareDisk::conformal_factor(x) : -1.0;
  for (double& c : v) c *= scale;
  return v;
}

std::optional<ConvexSetSpec> VectorField::singularities(const Space& space) const {
  const auto origin = [&] { return ConvexSetSpec::singleton(space.make_point(std::vector<double>(space.dim(), 0.0))); };
  switch (kind_) {
    case Kind::skew2d:
      return origin();
    case Kind::decay:
    case Kind::disk_rotation:
    case Kind::disk_decay:
      return parameter_ == 0.0 ? ConvexSetSpec::whole() : origin();
    case Kind::quadratic: {
      const std::size_t n = required_dim();
      if (std::all_of(matrix_.begin(), matrix_.end(), [](double v) { return v == 0.0; }))
        return ConvexSetSpec::whole();
      if (!singular(matrix_, n)) return origin();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string VectorField::describe() const {
  switch (kind_) {
    case Kind::skew2d: return "skew2d";
    case Kind::decay: return "decay:" + fmt(parameter_);
    case Kind::disk_rotation: return "disk-rotation:" + fmt(parameter_);
    case Kind::disk_decay: return "disk-decay:" + fmt(parameter_);
    case Kind::quadratic: {
      std::string out = "grad:quadratic:";
      for (std::size_t i = 0; i < matrix_.size(); ++i) out += (i ? "," : "") + fmt(matrix_[i]);
      return out;
    }
  }
  return "?";
}

SemigroupSpec SemigroupSpec::make(SpaceHandle space, VectorField field, double step) {
  if (!space) throw DomainError("semigroup without a space");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("semigroup step must be positive");
  if (field.on_disk()) {
    if (!dynamic_cast<const PoincareDisk*>(space.get()))
      throw Unsupported(field.describe() + " needs the disk");
  } else {
    if (!dynamic_cast<const EuclideanSpace*>(space.get()))
      throw Unsupported(field.describe() + " needs a euclidean space");
    if (field.required_dim() != 0 && field.required_dim() != space->dim())
      throw DomainError(field.describe() + " does not match the dimension of " + space->id());
  }
  return SemigroupSpec{std::move(space), std::move(field), step, 4};
}

std::size_t CurveTrace::node_at(double t) const {
  if (times.empty() || !(step > 0.0)) throw DomainError("empty curve");
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  if (std::abs(t - times.back()) <= tol) return times.size() - 1;
  const double q = std::round(t / step);
  if (q >= 0.0 && q < static_cast<double>(times.size())) {
    const auto i = static_cast<std::size_t>(q);
    if (std::abs(times[i] - t) <= tol) return i;
  }
  throw DomainError("time " + fmt(t) + " is not a grid node of the curve");
}

CurveTrace flow(const SemigroupSpec& spec, const Point& start, double horizon) {
  if (!(horizon > 0.0)) throw DomainError("flow horizon must be positive");
  CurveTrace curve;
  curve.start = start;
  curve.step = spec.step;
  const std::size_t steps = step_count(horizon, spec.step);
  curve.times.reserve(steps + 1);
  curve.points.reserve(steps + 1);
  integrate(spec, start, horizon, [&](std::size_t, double t, const std::vector<double>& x) {
    curve.times.push_back(t);
    curve.points.push_back(spec.space->make_point(x));
  });
  return curve;
}

Point evolve(const SemigroupSpec& spec, const Point& x, double t) {
  std::vector<double> last;
  integrate(spec, x, t, [&](std::size_t, double, const std::vector<double>& c) { last = c; });
  return spec.space->make_point(std::move(last));
}

FrechetProblem window_problem(const SpaceHandle& space, const CurveTrace& curve, double t_eval, double s) {
  if (!(t_eval > 0.0) || !(s >= 0.0)) throw DomainError("window needs T > 0 and s >= 0");
  if (s + t_eval > curve.horizon() * (1.0 + 1e-12))
    throw DomainError("window [" + fmt(s) + ", " + fmt(s + t_eval) + "] exceeds the curve horizon");
  const std::size_t i0 = curve.node_at(s);
  const std::size_t i1 = curve.node_at(s + t_eval);
  if (i1 < i0 + 7) throw DomainError("grid too coarse: fewer than 8 nodes in the window");
  std::vector<Point> anchors(curve.points.begin() + static_cast<std::ptrdiff_t>(i0),
                             curve.points.begin() + static_cast<std::ptrdiff_t>(i1 + 1));
  std::vector<double> w(anchors.size(), 0.0);
  for (std::size_t i = i0; i < i1; ++i) {
    const double half = 0.5 * (curve.times[i + 1] - curve.times[i]);
    w[i - i0] += half;
    w[i + 1 - i0] += half;
  }
  return FrechetProblem::weighted(space, std::move(anchors), std::move(w));
}

ContinuousMean continuous_mean(const SpaceHandle& space, const CurveTrace& curve, double t_eval, double s,
                               const KarcherOptions& options) {
  auto r = karcher_mean(window_problem(space, curve, t_eval, s), options);
  return {std::move(r.mean), std::move(r.certificate)};
}

SemigroupDiagnostics semigroup_diagnostics(const SemigroupSpec& spec, const CurveTrace& curve,
                                           std::span<const double> t_list, std::span<const double> s_list,
                                           double r, const KarcherOptions& options) {
  const Space& space = *spec.space;
  if (!(r > 0.0)) throw DomainError("residual time r must be positive");
  SemigroupDiagnostics out;
  out.space = spec.space;
  out.s_list.assign(s_list.begin(), s_list.end());
  out.r = r;

  const auto fixed = spec.field.singularities(space);
  out.has_projection = fixed.has_value();
  out.projection_monotone.check = "projection distance nonincreasing";
  out.projection_monotone.tolerance = tolerance::contract;
  if (fixed) {
    out.limit_projection = space.project(*fixed, curve.points.back());
    double prev = INFINITY;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const double d = space.distance(space.project(*fixed, curve.points[i]), curve.points[i]);
      if (i > 0)
        out.projection_monotone.record(d - prev, [&](auto& pts, auto& params) {
          pts = {curve.points[i - 1], curve.points[i]};
          params = {curve.times[i]};
        });
      prev = d;
    }
  }

  std::optional<Point> warm;
  std::vector<std::optional<Point>> warm_shifted(s_list.size());
  for (std::size_t idx = 0; idx < t_list.size(); ++idx) {
    const double T = t_list[idx];
    if (idx > 0 && !(T > t_list[idx - 1])) throw DomainError("evaluation times must increase");
    SemigroupRecord rec;
    rec.t = T;
    KarcherOptions ko = options;
    ko.initial = warm;
    ko.seed = options.seed + 1000 * idx;
    auto base = continuous_mean(spec.space, curve, T, 0.0, ko);
    rec.mean = base.mean;
    rec.certificate = base.certificate;
    rec.cert_gap = base.certificate.worst_gap;
    warm = base.mean;
    for (std::size_t j = 0; j < s_list.size(); ++j) {
      ko.initial = warm_shifted[j] ? warm_shifted[j] : warm;
      ko.seed = options.seed + 1000 * idx + 1 + j;
      auto sh = continuous_mean(spec.space, curve, T, s_list[j], ko);
      warm_shifted[j] = sh.mean;
      rec.shift_gaps.push_back(space.distance(rec.mean, sh.mean));
      rec.cert_gap = std::min(rec.cert_gap, sh.certificate.worst_gap);
      rec.shifted.push_back(std::move(sh.mean));
    }
    rec.residual_r = space.distance(rec.mean, evolve(spec, rec.mean, r));
    const Point& at_t = curve.points[curve.node_at(T)];
    rec.orbit_residual = space.distance(at_t, evolve(spec, at_t, r));
    rec.proj_dist = fixed ? space.distance(space.project(*fixed, at_t), at_t) : std::nan("");
    out.records.push_back(std::move(rec));
  }
  return out;
}

Verdict semigroup_verdict(const SemigroupDiagnostics& diagnostics, double tol_verdict) {
  if (diagnostics.records.empty() || !diagnostics.space) throw DomainError("verdict needs at least one record");
  const auto& recs = diagnostics.records;
  const Space& space = *diagnostics.space;
  auto agreement_at = [&](std::size_t i) -> double {
    if (diagnostics.limit_projection) return space.distance(recs[i].mean, *diagnostics.limit_projection);
    if (i == 0) return recs.size() == 1 ? 0.0 : INFINITY;
    return space.distance(recs[i].mean, recs[i - 1].mean);
  };
  Verdict v;
  v.tol_verdict = tol_verdict;
  v.limit_candidate = diagnostics.limit_projection ? *diagnostics.limit_projection : recs.back().mean;
  v.agreement = agreement_at(recs.size() - 1);
  v.residual = recs.back().residual_r;
  v.status = v.agreement <= tol_verdict && v.residual <= tol_verdict ? VerdictStatus::converged
                                                                     : VerdictStatus::inconclusive;
  if (v.status == VerdictStatus::converged) {
    std::size_t first = recs.size() - 1;
    while (first > 0 && agreement_at(first - 1) <= tol_verdict && recs[first - 1].residual_r <= tol_verdict) --first;
    v.converged_at = static_cast<std::size_t>(recs[first].t);
  }
  v.surrogate = "strong-convergence surrogate for Delta-mean convergence of the continuous means";
  return v;
}

ViolationReport check_semigroup_axioms(const SemigroupSpec& spec, std::uint64_t seed, std::size_t n_samples) {
  const Space& space = *spec.space;
  const double h = spec.step;
  Rng rng(seed);
  std::uniform_int_distribution<int> steps(0, 100);
  ViolationReport report;
  report.check = "semigroup axioms";
  report.tolerance = tolerance::contract;
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [x, y] = space.sample_pair(rng);
    const double t = h * steps(rng);
    const double s = h * steps(rng);
    auto rec = [&](double axiom, double amount) {
      report.record(amount, [&](auto& pts, auto& params) {
        pts = {x, y};
        params = {axiom, t, s};
      });
    };
    rec(1, space.distance(evolve(spec, x, 0.0), x));
    const Point sx = evolve(spec, x, s);
    const Point tx = evolve(spec, x, t);
    rec(2, space.distance(evolve(spec, x, t + s), evolve(spec, sx, t)));
    const double speed = norm(spec.field.value(tx.coords));
    rec(3, space.distance(evolve(spec, tx, h), tx) - h * speed * (1.0 + h));
    rec(4, space.distance(tx, evolve(spec, y, t)) - space.distance(x, y) * (1.0 + h * h));
  }
  return report;
}

ViolationReport check_field_monotone(const SemigroupSpec& spec, std::uint64_t seed, std::size_t n_samples,
                                     double tol) {
  const Space& space = *spec.space;
  const auto* disk = dynamic_cast<const PoincareDisk*>(&space);
  Rng rng(seed);
  ViolationReport report;
  report.check = "monotone field";
  report.tolerance = tol;
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto [x, y] = space.sample_pair(rng);
    const auto ax = spec.field.value(x.coords);
    const auto ay = spec.field.value(y.coords);
    double amount = 0.0;
    if (disk) {
      const Tangent lxy = disk->log(x, y);
      const Tangent lyx = disk->log(y, x);
      amount = ax[0] * lxy[0] + ax[1] * lxy[1] + ay[0] * lyx[0] + ay[1] * lyx[1];
    } else {
      for (std::size_t k = 0; k < x.dim(); ++k) amount -= (ax[k] - ay[k]) * (x[k] - y[k]);
    }
    report.record(amount, [&](auto& pts, auto&) { pts = {x, y}; });
  }
  return report;
}

}  // namespace hadamard
