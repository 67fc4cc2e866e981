#include "hadamard/mapping.hpp"

#include <cmath>
#include <cstdio>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/river.hpp"
#include "text.hpp"

namespace hadamard {

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::identity: return "identity";
    case MapKind::rotation: return "rotation";
    case MapKind::river_product: return "river_product";
    case MapKind::convex_projection: return "convex_projection";
    case MapKind::composition: return "composition";
    case MapKind::custom: return "custom";
  }
  return "?";
}

MappingSpec::MappingSpec(SpaceHandle space, MapKind kind, std::string description, Function fn,
                         std::optional<ConvexSetSpec> fixed_set)
    : space_(std::move(space)),
      kind_(kind),
      description_(std::move(description)),
      fn_(std::move(fn)),
      fixed_set_(std::move(fixed_set)) {
  if (!space_) throw DomainError("mapping without a space");
}

MappingSpec MappingSpec::identity(SpaceHandle space) {
  return MappingSpec(std::move(space), MapKind::identity, "identity", [](const Point& x) { return x; },
                     ConvexSetSpec::whole());
}

MappingSpec MappingSpec::rotation(SpaceHandle space, double theta) {
  if (!space || space->dim() != 2 || space->id().rfind("river", 0) == 0 || space->id() == "circle")
    throw Unsupported("rotation needs euclidean:2 or the disk");
  if (!std::isfinite(theta)) throw DomainError("rotation angle must be finite");
  const double c = std::cos(theta), s = std::sin(theta);
  const Space* sp = space.get();
  char buf[64];
  std::snprintf(buf, sizeof buf, "rotation:theta=%.17g", theta);
  auto fixed = std::remainder(theta, 2.0 * M_PI) == 0.0
                   ? ConvexSetSpec::whole()
                   : ConvexSetSpec::singleton(space->make_point({0.0, 0.0}));
  return MappingSpec(
      std::move(space), MapKind::rotation, buf,
      [c, s, sp](const Point& x) { return sp->make_point({c * x[0] - s * x[1], s * x[0] + c * x[1]}); },
      std::move(fixed));
}

MappingSpec MappingSpec::river_product(SpaceHandle space, PiecewiseLinear f, PiecewiseLinear g) {
  if (!space || !dynamic_cast<const RiverPlane*>(space.get()))
    throw Unsupported("river_product needs the river plane");
  if (!f.strictly_monotone()) throw DomainError("river_product: f must be strictly monotone");
  if (g(0.0) != 0.0) throw DomainError("river_product: g(0) must be 0");
  std::optional<ConvexSetSpec> fixed;
  const auto fi = f.fixed_interval();
  const auto gi = g.fixed_interval();
  if (fi && gi && gi->contains(0.0, 0.0)) fixed = ConvexSetSpec::box({*fi, *gi});
  const Space* sp = space.get();
  std::string desc = "river_product:f=" + f.describe() + ";g=" + g.describe();
  return MappingSpec(
      std::move(space), MapKind::river_product, std::move(desc),
      [f = std::move(f), g = std::move(g), sp](const Point& x) { return sp->make_point({f(x[0]), g(x[1])}); },
      std::move(fixed));
}

MappingSpec MappingSpec::projection(SpaceHandle space, ConvexSetSpec set) {
  const Space* sp = space.get();
  // Fail at construction when the space cannot project onto this set.
  Rng rng(0);
  (void)sp->project(set, sp->sample(rng));
  std::string desc = "proj:" + set.describe();
  return MappingSpec(
      std::move(space), MapKind::convex_projection, std::move(desc),
      [set, sp](const Point& x) { return sp->project(set, x); }, set);
}

MappingSpec MappingSpec::compose(std::vector<MappingSpec> maps) {
  if (maps.empty()) throw DomainError("composition of no maps");
  std::string desc = "compose:";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].space()->id() != maps[0].space()->id())
      throw SpaceMismatch("composed maps live in different spaces");
    desc += (i ? "|" : "") + maps[i].description();
  }
  SpaceHandle space = maps[0].space();
  return MappingSpec(
      std::move(space), MapKind::composition, std::move(desc),
      [maps = std::move(maps)](const Point& x) {
        Point y = x;
        for (const auto& m : maps) y = m.apply(y);
        return y;
      },
      std::nullopt);
}

MappingSpec MappingSpec::custom(SpaceHandle space, Function fn, std::string description,
                                std::optional<ConvexSetSpec> fixed_set) {
  if (!fn) throw DomainError("custom map without a function");
  return MappingSpec(std::move(space), MapKind::custom, std::move(description), std::move(fn),
                     std::move(fixed_set));
}

Point MappingSpec::apply(const Point& x) const {
  space_->require(x);
  Point y = fn_(x);
  if (!space_->owns(y) || !space_->contains(y.coords))
    throw DomainError("map image " + to_string(y) + " leaves " + space_->id());
  return y;
}

MappingSpec parse_mapping(SpaceHandle space, const std::string& raw) {
  const std::string_view s = text::trim(raw);
  const std::string key = "map";
  try {
    if (s == "identity") return MappingSpec::identity(space);
    if (text::starts_with(s, "rotation:theta=")) {
      auto theta = text::to_double(s.substr(15));
      if (!theta) throw ParseError("bad rotation angle in '" + std::string(s) + "'", key);
      return MappingSpec::rotation(space, *theta);
    }
    if (text::starts_with(s, "river_product:")) {
      std::optional<PiecewiseLinear> f, g;
      for (auto part : text::split_top(s.substr(14), ';')) {
        if (text::starts_with(part, "f=")) f = PiecewiseLinear::parse(std::string(part.substr(2)));
        else if (text::starts_with(part, "g=")) g = PiecewiseLinear::parse(std::string(part.substr(2)));
        else throw ParseError("unknown river_product field '" + std::string(part) + "'", key);
      }
      if (!f || !g) throw ParseError("river_product needs both f= and g=", key);
      return MappingSpec::river_product(space, *f, *g);
    }
    if (text::starts_with(s, "proj:"))
      return MappingSpec::projection(space, parse_convex_set(*space, std::string(s.substr(5))));
    if (text::starts_with(s, "compose:")) {
      std::vector<MappingSpec> maps;
      for (auto part : text::split_top(s.substr(8), '|')) maps.push_back(parse_mapping(space, std::string(part)));
      return MappingSpec::compose(std::move(maps));
    }
  } catch (const ParseError& e) {
    if (e.key() == key) throw;
    throw ParseError(e.message(), key);
  } catch (const Error& e) {
    throw ParseError(e.what(), key);
  }
  throw ParseError("unknown map '" + std::string(s) + "'", key);
}

ViolationReport check_nonexpansive(const MappingSpec& map, std::uint64_t seed, std::size_t n_pairs,
                                   double tol) {
  if (n_pairs == 0) throw DomainError("nonexpansive check needs at least one pair");
  const Space& space = *map.space();
  Rng rng(seed);
  ViolationReport report;
  report.check = "nonexpansive " + map.description();
  report.tolerance = tol;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    auto [x, y] = space.sample_pair(rng);
    const double amount = space.distance(map.apply(x), map.apply(y)) - space.distance(x, y);
    report.record(amount, [&](auto& pts, auto&) { pts = {x, y}; });
  }
  return report;
}

ViolationReport check_fixed_set(const MappingSpec& map, std::uint64_t seed, std::size_t n_samples,
                                double tol) {
  ViolationReport report;
  report.check = "fixed set " + map.description();
  report.tolerance = tol;
  if (!map.fixed_set()) return report;
  const Space& space = *map.space();
  Rng rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Point p = sample_in_set(space, *map.fixed_set(), rng);
    report.record(space.distance(map.apply(p), p), [&](auto& pts, auto&) { pts = {p}; });
  }
  return report;
}

Point project_fixed_set(const MappingSpec& map, const Point& x) {
  if (!map.fixed_set()) throw Unsupported("fixed set of " + map.description() + " is unknown");
  return map.space()->project(*map.fixed_set(), x);
}

double residual(const MappingSpec& map, const Point& x) { return map.space()->distance(x, map.apply(x)); }

}  // namespace hadamard
