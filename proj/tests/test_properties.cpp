#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hadamard/experiment.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/spaces.hpp"
#include "property.hpp"

using namespace hadamard;

namespace {

// Piecewise-linear map with slopes in [lo, hi].
PiecewiseLinear random_pl(Rng& rng, double lo, double hi, bool through_origin) {
  const auto xs = prop::breakpoints(rng, prop::integer(rng, 2, 6), 4.0);
  std::vector<std::pair<double, double>> nodes{{xs[0], prop::uniform(rng, -2, 2)}};
  for (std::size_t i = 1; i < xs.size(); ++i)
    nodes.emplace_back(xs[i], nodes.back().second + prop::uniform(rng, lo, hi) * (xs[i] - xs[i - 1]));
  if (!through_origin) return PiecewiseLinear(nodes);
  // Re-anchor so that 0 is a node with value exactly 0.
  const PiecewiseLinear f(nodes);
  const double shift = f(0.0);
  std::vector<std::pair<double, double>> pinned;
  for (const auto& [x, v] : nodes)
    if (std::abs(x) > 1e-3) pinned.emplace_back(x, v - shift);
  pinned.emplace_back(0.0, 0.0);
  std::sort(pinned.begin(), pinned.end());
  return PiecewiseLinear(pinned);
}

PiecewiseLinear random_injective(Rng& rng) {
  return prop::integer(rng, 0, 1) ? random_pl(rng, 0.05, 1.0, false) : random_pl(rng, -1.0, -0.05, false);
}

ConvexSetSpec random_set(const Space& space, Rng& rng) {
  // Kinds with a projector: all in the plane, no half-spaces on the river, no
  // half-spaces or boxes on the disk. River boxes must straddle the spine.
  const bool river = space.id() == "river", disk = space.id().rfind("disk", 0) == 0;
  int kind = prop::integer(rng, 0, disk ? 1 : 3);
  if (river && kind == 2) kind = 3;
  switch (kind) {
    case 0: return ConvexSetSpec::singleton(space.sample(rng));
    case 1: return ConvexSetSpec::segment(space.sample(rng), space.sample(rng));
    case 2: return ConvexSetSpec::halfspace(space.sample(rng), space.sample(rng));
    default: {
      const double a = prop::uniform(rng, -3, 1), b = prop::uniform(rng, -1, 3);
      const double c = prop::uniform(rng, -3, river ? 0 : 1), d = prop::uniform(rng, river ? 0 : -1, 3);
      return ConvexSetSpec::box({{std::min(a, b), std::max(a, b)}, {std::min(c, d), std::max(c, d)}});
    }
  }
}

std::string describe(const Point& p) {
  std::ostringstream s;
  s << "(" << p[0] << ", " << p[1] << ")";
  return s.str();
}

}  // namespace

TEST(Property, RiverProductsOfNonexpansiveMapsAreNonexpansive) {
  auto s = make_space("river");
  prop::for_all(101, 200, [&](Rng& rng) -> std::string {
    const auto t = MappingSpec::river_product(s, random_injective(rng), random_pl(rng, -1.0, 1.0, true));
    const auto rep = check_nonexpansive(t, rng(), 200, 1e-9);
    return rep.passed() ? "" : t.description() + " " + rep.summary();
  });
}

TEST(Property, ExpansiveRiverProductsAreCaught) {
  auto s = make_space("river");
  prop::for_all(102, 50, [&](Rng& rng) -> std::string {
    const auto f = random_pl(rng, 1.2, 2.0, false);
    const auto t = MappingSpec::river_product(s, f, PiecewiseLinear::linear(0.5));
    const auto rep = check_nonexpansive(t, rng(), 500, 1e-9);
    return rep.passed() || !rep.has_witness() ? "missed " + t.description() : "";
  });
}

TEST(Property, FixedIntervalPointsAreFixed) {
  prop::for_all(103, 300, [&](Rng& rng) -> std::string {
    const auto f = random_pl(rng, -1.0, 1.0, false);
    const auto iv = f.fixed_interval();
    for (int i = 0; i < 20; ++i) {
      const double x = prop::uniform(rng, -8, 8);
      const bool fixed = std::abs(f(x) - x) <= 1e-9;
      const bool inside = iv && iv->contains(x, 1e-9);
      if (inside && !fixed) return f.describe() + " not fixed at " + std::to_string(x);
      if (fixed && !inside && std::abs(f(x) - x) < 1e-12) return f.describe() + " missed fixed point";
    }
    return "";
  });
}

TEST(Property, ProjectionsAreIdempotentAndNonexpansive) {
  for (const char* id : {"euclidean:2", "river", "disk"}) {
    auto s = make_space(id);
    prop::for_all(104, 100, [&](Rng& rng) -> std::string {
      const auto set = random_set(*s, rng);
      for (int i = 0; i < 20; ++i) {
        auto [x, y] = s->sample_pair(rng);
        const Point px = s->project(set, x), py = s->project(set, y);
        if (!set.contains(*s, px, 1e-9)) return std::string(id) + " " + set.describe() + " image outside";
        if (s->distance(s->project(set, px), px) > 1e-9) return std::string(id) + " " + set.describe() + " not idempotent";
        if (s->distance(px, py) > s->distance(x, y) + 1e-9)
          return std::string(id) + " " + set.describe() + " expands " + describe(x) + " " + describe(y);
      }
      return "";
    });
  }
}

TEST(Property, KarcherMeanIgnoresAnchorOrder) {
  for (const char* id : {"euclidean:2", "river", "disk"}) {
    auto s = make_space(id);
    prop::for_all(105, 60, [&](Rng& rng) -> std::string {
      std::vector<Point> anchors;
      const int n = prop::integer(rng, 2, 8);
      for (int i = 0; i < n; ++i) anchors.push_back(s->sample(rng));
      const auto a = karcher_mean(FrechetProblem::uniform(s, anchors));
      std::shuffle(anchors.begin(), anchors.end(), rng);
      const auto b = karcher_mean(FrechetProblem::uniform(s, anchors));
      if (!a.certificate.passes() || !b.certificate.passes()) return std::string(id) + " certificate failed";
      const double d = s->distance(a.mean, b.mean);
      return d <= 1e-6 ? "" : std::string(id) + " order changed the mean by " + std::to_string(d);
    });
  }
}

TEST(Property, KarcherMeanCommutesWithRotations) {
  for (const char* id : {"euclidean:2", "disk"}) {
    auto s = make_space(id);
    prop::for_all(106, 60, [&](Rng& rng) -> std::string {
      const auto rot = MappingSpec::rotation(s, prop::uniform(rng, -M_PI, M_PI));
      std::vector<Point> anchors, turned;
      for (int i = 0, n = prop::integer(rng, 1, 7); i < n; ++i) {
        anchors.push_back(s->sample(rng));
        turned.push_back(rot(anchors.back()));
      }
      const auto a = karcher_mean(FrechetProblem::uniform(s, anchors)).mean;
      const auto b = karcher_mean(FrechetProblem::uniform(s, turned)).mean;
      const double d = s->distance(rot(a), b);
      return d <= 1e-6 ? "" : std::string(id) + " rotation moved the mean by " + std::to_string(d);
    });
  }
}

TEST(Property, MeanLowersTheFunctionalBelowEveryProbe) {
  for (const char* id : {"euclidean:2", "river", "disk"}) {
    auto s = make_space(id);
    prop::for_all(107, 40, [&](Rng& rng) -> std::string {
      std::vector<Point> anchors;
      std::vector<double> w;
      for (int i = 0, n = prop::integer(rng, 1, 10); i < n; ++i) {
        anchors.push_back(s->sample(rng));
        w.push_back(prop::uniform(rng, 0.1, 3.0));
      }
      const auto p = FrechetProblem::weighted(s, anchors, w);
      const auto r = karcher_mean(p);
      for (int i = 0; i < 50; ++i) {
        const Point y = s->sample(rng);
        const double lhs = frechet_value(p, y) - r.certificate.functional_value;
        if (lhs < std::pow(s->distance(y, r.mean), 2) - 1e-6) return std::string(id) + " variance inequality fails";
      }
      return "";
    });
  }
}

TEST(Property, ConfigsRoundTrip) {
  const std::vector<std::string> maps{"identity", "rotation:theta=0.25", "proj:x-axis",
                                      "river_product:f=pl[(-1,-0.5),(1,0.5)];g=id"};
  prop::for_all(108, 200, [&](Rng& rng) -> std::string {
    ExperimentConfig c;
    const bool semigroup = prop::integer(rng, 0, 1) == 1;
    if (semigroup) {
      c.kind = ExperimentKind::semigroup;
      c.space = "euclidean:2";
      c.field = prop::integer(rng, 0, 1) ? "skew2d" : "decay:" + format_number(prop::uniform(rng, 0, 2));
      c.horizon_t = prop::uniform(rng, 1, 50);
      c.step = prop::uniform(rng, 1e-3, 0.1);
      c.r = prop::uniform(rng, 0.1, 2);
      c.s_list = {prop::uniform(rng, 0, 1), prop::uniform(rng, 1, 9)};
      c.schedule = {c.horizon_t / 3, c.horizon_t};
    } else {
      c.space = prop::integer(rng, 0, 1) ? "euclidean:2" : "river";
      c.map = maps[prop::integer(rng, c.space == "river" ? 2 : 0, c.space == "river" ? 3 : 2)];
      c.horizon_n = static_cast<std::size_t>(prop::integer(rng, 4, 5000));
      c.k_list = {static_cast<std::size_t>(prop::integer(rng, 0, 3))};
      if (prop::integer(rng, 0, 1)) c.schedule = {1.0, static_cast<double>(c.horizon_n)};
    }
    c.start = {prop::uniform(rng, -3, 3), prop::uniform(rng, -3, 3)};
    c.tol_verdict = prop::uniform(rng, 1e-6, 1e-1);
    c.tol_solver = prop::uniform(rng, 1e-14, 1e-8);
    c.seed = rng();
    c.output = "traces/p" + std::to_string(prop::integer(rng, 0, 99));
    const auto back = parse_config(serialize(c));
    return back == c ? "" : "config changed:\n" + serialize(c) + "---\n" + serialize(back);
  });
}

TEST(Property, CompositionsOfShippedMapsStayNonexpansive) {
  auto s = make_space("river");
  prop::for_all(109, 60, [&](Rng& rng) -> std::string {
    std::vector<MappingSpec> parts;
    for (int i = 0, n = prop::integer(rng, 2, 4); i < n; ++i) {
      if (prop::integer(rng, 0, 1))
        parts.push_back(MappingSpec::river_product(s, random_injective(rng), random_pl(rng, -1.0, 1.0, true)));
      else
        parts.push_back(MappingSpec::projection(s, random_set(*s, rng)));
    }
    const auto t = MappingSpec::compose(parts);
    const auto rep = check_nonexpansive(t, rng(), 300, 1e-9);
    return rep.passed() ? "" : t.description() + " " + rep.summary();
  });
}
