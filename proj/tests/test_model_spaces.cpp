#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "hadamard/circle.hpp"
#include "hadamard/error.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/poincare_disk.hpp"
#include "hadamard/river.hpp"
#include "hadamard/spaces.hpp"
#include "oracles.hpp"

using namespace hadamard;

TEST(MakeSpace, Descriptors) {
  EXPECT_EQ(make_space("euclidean:3")->dim(), 3u);
  EXPECT_EQ(make_space("river")->id(), "river");
  EXPECT_EQ(make_space("disk")->id(), make_space("disk:0.05")->id());
  auto d = std::dynamic_pointer_cast<const PoincareDisk>(make_space("disk:0.2"));
  ASSERT_TRUE(d);
  EXPECT_DOUBLE_EQ(d->max_radius(), 0.8);
  EXPECT_EQ(make_space("circle")->dim(), 1u);
}

TEST(MakeSpace, RejectsUnknownOrMalformed) {
  EXPECT_THROW(make_space("torus"), ParseError);
  EXPECT_THROW(make_space("euclidean:0"), ParseError);
  EXPECT_THROW(make_space("euclidean:x"), ParseError);
  EXPECT_THROW(make_space("disk:1.5"), ParseError);
}

TEST(Membership, DiskMarginIsAHardError) {
  auto s = make_space("disk");
  EXPECT_NO_THROW(s->make_point({0.95, 0.0}));
  EXPECT_THROW(s->make_point({0.96, 0.0}), DomainError);
  EXPECT_THROW(s->make_point({0.1}), DomainError);
  EXPECT_THROW(s->make_point({NAN, 0.0}), DomainError);
}

TEST(RiverPath, VerticalSegment) {
  const std::array<double, 2> a{1, 2}, b{1, 5};
  const auto p = river_canonical_path(a, b);
  ASSERT_EQ(p.breakpoints.size(), 2u);
  EXPECT_DOUBLE_EQ(p.length(), 3.0);
}

TEST(RiverPath, ThroughSpine) {
  const std::array<double, 2> a{0, 1}, b{2, 3};
  const auto p = river_canonical_path(a, b);
  const std::vector<std::array<double, 2>> expected{{0, 1}, {0, 0}, {2, 0}, {2, 3}};
  EXPECT_EQ(p.breakpoints, expected);
  EXPECT_EQ(p.arclength, (std::vector<double>{0, 1, 3, 6}));
}

TEST(RiverPath, DegenerateLegsAreDropped) {
  const std::array<double, 2> a{0, 0}, b{2, 3};
  EXPECT_EQ(river_canonical_path(a, b).breakpoints.size(), 3u);
  const std::array<double, 2> c{2, 3};
  const auto p = river_canonical_path(c, c);
  EXPECT_EQ(p.length(), 0.0);
  EXPECT_EQ(p.at(0.0), c);
}

TEST(RiverPath, LengthMatchesDistanceOnRandomPairs) {
  RiverPlane river;
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    auto [a, b] = river.sample_pair(rng);
    const double len = river_canonical_path(a.coords, b.coords).length();
    ASSERT_NEAR(len, river.distance(a, b), 1e-12);
    ASSERT_NEAR(len, oracle::river({a[0], a[1]}, {b[0], b[1]}), 1e-12);
  }
}

TEST(RiverPath, BreakpointTieResolvesToEarlierSegment) {
  const std::array<double, 2> a{0, 1}, b{2, 3};
  const auto p = river_canonical_path(a, b);
  EXPECT_EQ(p.at(1.0), (std::array<double, 2>{0, 0}));
  EXPECT_EQ(p.at(3.0), (std::array<double, 2>{2, 0}));
}

TEST(RiverPlane, SamplesCoverVerticalBranch) {
  RiverPlane river;
  Rng rng(1);
  int same = 0;
  for (int i = 0; i < 1000; ++i) {
    auto [a, b] = river.sample_pair(rng);
    same += a[0] == b[0];
    ASSERT_LE(std::abs(a[0]), RiverPlane::kSampleHalfWidth);
    ASSERT_LE(std::abs(a[1]), RiverPlane::kSampleHalfWidth);
  }
  EXPECT_GT(same, 150);
  EXPECT_LT(same, 350);
}

TEST(DiskLog, ZeroAtBase) {
  PoincareDisk disk;
  const Point p = disk.make_point({0.3, -0.4});
  const Tangent v = disk.log(p, p);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], 0.0);
}

TEST(DiskLog, FromOriginAlongRealAxis) {
  PoincareDisk disk;
  const Tangent v = disk.log(disk.make_point({0, 0}), disk.make_point({0.5, 0}));
  EXPECT_NEAR(v[0], 2.0 * std::atanh(0.5), 1e-12);
  EXPECT_NEAR(v[0], std::log(3.0), 1e-12);
  EXPECT_NEAR(v[1], 0.0, 1e-15);
}

TEST(DiskLog, NormIsDistanceAndExpInverts) {
  PoincareDisk disk;
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    auto [a, b] = disk.sample_pair(rng);
    const Tangent v = disk.log(a, b);
    const double d = disk.distance(a, b);
    ASSERT_NEAR(std::hypot(v[0], v[1]), d, 1e-10 * std::max(1.0, d));
    ASSERT_NEAR(d, oracle::disk({a[0], a[1]}, {b[0], b[1]}), 1e-8 * std::max(1.0, d));
    const Point back = disk.exp(a, v);
    ASSERT_NEAR(back[0], b[0], 1e-9);
    ASSERT_NEAR(back[1], b[1], 1e-9);
  }
}

TEST(DiskExp, ZeroVectorAndInverseExample) {
  PoincareDisk disk;
  const Point p = disk.make_point({0.1, 0.7});
  EXPECT_EQ(disk.exp(p, {0.0, 0.0}), p);
  const Point q = disk.exp(disk.make_point({0, 0}), {std::log(3.0), 0.0});
  EXPECT_NEAR(q[0], 0.5, 1e-12);
  EXPECT_NEAR(q[1], 0.0, 1e-15);
}

TEST(DiskExp, DistanceEqualsTangentLength) {
  PoincareDisk disk;
  Rng rng(5);
  std::normal_distribution<double> n(0.0, 0.8);
  for (int i = 0; i < 500; ++i) {
    const Point base = disk.sample(rng);
    const Tangent v{n(rng), n(rng)};
    const auto c = disk.exp_coords(base.coords, v);
    if (!disk.contains(c)) continue;
    ASSERT_NEAR(disk.distance(base, disk.make_point({c[0], c[1]})), std::hypot(v[0], v[1]), 1e-10);
  }
}

TEST(DiskExp, ExcursionBeyondMarginThrows) {
  PoincareDisk disk;
  EXPECT_THROW(disk.exp(disk.make_point({0, 0}), {10.0, 0.0}), DomainError);
}

TEST(DiskExp, HalfLogIsGeodesicMidpoint) {
  PoincareDisk disk;
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    auto [a, b] = disk.sample_pair(rng);
    const Tangent v = disk.log(a, b);
    const Point m1 = disk.exp(a, {0.5 * v[0], 0.5 * v[1]});
    const Point m2 = disk.geodesic_point(a, b, 0.5);
    ASSERT_NEAR(disk.distance(m1, m2), 0.0, 1e-9);
  }
}

TEST(Disk, CurvatureGivesStrictSlack) {
  // Strictly negative curvature: the CAT(0) inequality holds with room to spare
  // on nondegenerate samples.
  PoincareDisk disk;
  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    auto [x0, x1] = disk.sample_pair(rng);
    const Point y = disk.sample(rng);
    const double t = 0.5;
    const auto d2 = [&](const Point& a, const Point& b) { return std::pow(disk.distance(a, b), 2); };
    const double lhs = d2(y, disk.geodesic_point(x0, x1, t));
    const double rhs = (1 - t) * d2(y, x0) + t * d2(y, x1) - t * (1 - t) * d2(x0, x1);
    if (disk.distance(x0, x1) > 0.1 && disk.distance(y, disk.geodesic_point(x0, x1, t)) > 0.1) {
      ASSERT_LT(lhs, rhs) << i;
    }
  }
}

TEST(Spaces, GeometrySuitePasses) {
  for (const char* id : {"euclidean:2", "euclidean:5", "river", "disk"}) {
    auto s = make_space(id);
    for (const auto& r : {check_cat0_sample(*s, 1, 10000, tolerance::contract),
                          check_cauchy_schwarz_sample(*s, 2, 10000, tolerance::contract),
                          check_q4bar_sample(*s, 3, 10000, tolerance::contract),
                          check_geodesic_consistency(*s, 4, 10000, tolerance::contract),
                          check_metric_axioms(*s, 5, 10000, tolerance::contract)}) {
      EXPECT_TRUE(r.passed()) << id << ": " << r.summary();
    }
  }
}

TEST(Circle, GeodesicButNotCat0) {
  UnitCircle circle;
  EXPECT_TRUE(check_geodesic_consistency(circle, 4, 5000, tolerance::contract).passed());
  EXPECT_TRUE(check_metric_axioms(circle, 4, 5000, tolerance::contract).passed());
  const auto cs = check_cauchy_schwarz_sample(circle, 4, 5000, tolerance::contract);
  EXPECT_FALSE(cs.passed());
  EXPECT_EQ(cs.witness.size(), 4u);
}
