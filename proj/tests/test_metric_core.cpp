#include <gtest/gtest.h>

#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/spaces.hpp"

using namespace hadamard;

namespace {

SpaceHandle R2() { return make_space("euclidean:2"); }
SpaceHandle R3() { return make_space("euclidean:3"); }
SpaceHandle River() { return make_space("river"); }
SpaceHandle Disk() { return make_space("disk"); }

}  // namespace

TEST(Distance, EuclideanPythagorean) {
  auto s = R2();
  EXPECT_DOUBLE_EQ(s->distance(s->make_point({0, 0}), s->make_point({3, 4})), 5.0);
}

TEST(Distance, RiverSameAbscissa) {
  auto s = River();
  EXPECT_DOUBLE_EQ(s->distance(s->make_point({1, 2}), s->make_point({1, 5})), 3.0);
}

TEST(Distance, RiverThroughSpine) {
  auto s = River();
  EXPECT_DOUBLE_EQ(s->distance(s->make_point({0, 1}), s->make_point({2, 3})), 6.0);
}

TEST(Distance, MismatchedSpacesThrow) {
  auto a = R2(), b = River();
  EXPECT_THROW(a->distance(a->make_point({0, 0}), b->make_point({0, 0})), SpaceMismatch);
}

TEST(Geodesic, EuclideanMidpoint) {
  auto s = R2();
  const Point m = s->geodesic_point(s->make_point({0, 0}), s->make_point({2, 2}), 0.5);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_DOUBLE_EQ(m[1], 1.0);
}

TEST(Geodesic, RiverMidpointIsSpineCorner) {
  auto s = River();
  const Point m = s->geodesic_point(s->make_point({0, 1}), s->make_point({2, 3}), 0.5);
  EXPECT_EQ(m, s->make_point({2, 0}));
}

TEST(Geodesic, EndpointsAreExact) {
  for (auto s : {R2(), River(), Disk()}) {
    Rng rng(3);
    auto [a, b] = s->sample_pair(rng);
    EXPECT_EQ(s->geodesic_point(a, b, 0.0), a) << s->id();
    EXPECT_EQ(s->geodesic_point(a, b, 1.0), b) << s->id();
  }
}

TEST(Geodesic, ParameterOutsideUnitIntervalThrows) {
  auto s = R2();
  const Point a = s->make_point({0, 0}), b = s->make_point({1, 0});
  EXPECT_THROW(s->geodesic_point(a, b, -0.1), DomainError);
  EXPECT_THROW(s->geodesic_point(a, b, 1.5), DomainError);
}

TEST(QuasiInner, CollapsesWhenAEqualsB) {
  auto s = River();
  const Point a = s->make_point({1, 2});
  EXPECT_NEAR(quasi_inner(*s, a, a, s->make_point({-3, 1}), s->make_point({4, -2})), 0.0, 1e-12);
}

TEST(QuasiInner, EuclideanDotProduct) {
  auto s = R2();
  const Point o = s->make_point({0, 0});
  EXPECT_NEAR(quasi_inner(*s, o, s->make_point({1, 0}), o, s->make_point({0, 1})), 0.0, 1e-12);
  const Point b = s->make_point({1, 2});
  EXPECT_NEAR(quasi_inner(*s, o, b, o, b), 5.0, 1e-12);
}

TEST(QuasiInner, IdentitiesOnEveryShippedSpace) {
  for (auto s : {R3(), River(), Disk()}) {
    const auto r = check_quasi_inner_identities(*s, 11, 2000, tolerance::identity);
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(Cat0, EuclideanAndRiverWithinIdentityTolerance) {
  for (auto s : {R3(), River()}) {
    const auto r = check_cat0_sample(*s, 5, 10000, tolerance::identity);
    EXPECT_TRUE(r.passed()) << r.summary();
    EXPECT_EQ(r.samples_tested, 10000u);
  }
}

TEST(Cat0, CircleIsFlaggedWithWitness) {
  auto s = make_space("circle");
  const auto r = check_cat0_sample(*s, 5, 2000, tolerance::contract);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.worst_violation, 0.0);
  ASSERT_EQ(r.witness.size(), 3u);
  ASSERT_EQ(r.witness_params.size(), 1u);
  // The witness reproduces the violation.
  const auto& x0 = r.witness[0];
  const auto& x1 = r.witness[1];
  const auto& y = r.witness[2];
  const double t = r.witness_params[0];
  const auto d2 = [&](const Point& a, const Point& b) { return std::pow(s->distance(a, b), 2); };
  const double lhs = d2(y, s->geodesic_point(x0, x1, t));
  const double rhs = (1 - t) * d2(y, x0) + t * d2(y, x1) - t * (1 - t) * d2(x0, x1);
  EXPECT_NEAR(lhs - rhs, r.worst_violation, 1e-12);
}

TEST(CauchySchwarz, DiskSampler) {
  auto s = Disk();
  const auto r = check_cauchy_schwarz_sample(*s, 9, 10000, tolerance::identity);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(CauchySchwarz, DegenerateSegmentsGiveZero) {
  auto s = R2();
  const Point a = s->make_point({1, 1}), c = s->make_point({2, -1}), d = s->make_point({0, 3});
  EXPECT_NEAR(quasi_inner(*s, a, a, c, d), 0.0, 1e-12);
  EXPECT_NEAR(quasi_inner(*s, c, d, a, a), 0.0, 1e-12);
}

TEST(Q4bar, EuclideanAndRiver) {
  for (auto s : {R2(), River()}) {
    const auto r = check_q4bar_sample(*s, 13, 10000, tolerance::identity, 17);
    EXPECT_TRUE(r.passed()) << r.summary();
    EXPECT_EQ(r.samples_tested, 10000u * 17u);
  }
}

TEST(Q4bar, CoincidentPQHoldsWithEquality) {
  auto s = River();
  const Point p = s->make_point({1, 1});
  const auto r = check_q4bar_quadruple(*s, s->make_point({-2, 3}), s->make_point({4, -1}), p, p, 0.0);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.worst_violation, 0.0);
}

TEST(Q4bar, GridNeedsTwoPoints) {
  auto s = R2();
  EXPECT_THROW(check_q4bar_sample(*s, 1, 10, 1e-9, 1), DomainError);
}

TEST(Projection, EuclideanSegment) {
  auto s = R2();
  const auto seg = ConvexSetSpec::segment(s->make_point({0, 0}), s->make_point({2, 0}));
  const Point p = s->project(seg, s->make_point({1, 5}));
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_NEAR(p[1], 0.0, 1e-12);
}

TEST(Projection, RiverAxisIsFootOfLeg) {
  auto s = River();
  EXPECT_EQ(s->project(ConvexSetSpec::x_axis(2), s->make_point({3, 2})), s->make_point({3, 0}));
}

TEST(Projection, MembersAreFixed) {
  auto s = River();
  const Point x = s->make_point({-1.5, 0});
  EXPECT_EQ(s->project(ConvexSetSpec::x_axis(2), x), x);
  auto e = R2();
  const auto seg = ConvexSetSpec::segment(e->make_point({0, 0}), e->make_point({2, 0}));
  const Point y = e->make_point({0.5, 0});
  EXPECT_EQ(e->project(seg, y), y);
}

TEST(Projection, InequalityAgainstSampledMembers) {
  struct Case {
    SpaceHandle space;
    ConvexSetSpec set;
    Point x;
  };
  auto e = R2(), r = River(), d = Disk();
  const std::vector<Case> cases{
      {e, ConvexSetSpec::segment(e->make_point({0, 0}), e->make_point({2, 1})), e->make_point({1, 5})},
      {e, ConvexSetSpec::halfspace(e->make_point({0, 0}), e->make_point({2, 0})), e->make_point({3, 1})},
      {e, ConvexSetSpec::box({{-1, 1}, {0, 2}}), e->make_point({3, -1})},
      {r, ConvexSetSpec::x_axis(2), r->make_point({3, 2})},
      {r, ConvexSetSpec::segment(r->make_point({-1, 2}), r->make_point({3, 1})), r->make_point({0, -3})},
      {r, ConvexSetSpec::box({{-1, 1}, {-2, 2}}), r->make_point({4, 3})},
      {d, ConvexSetSpec::segment(d->make_point({-0.5, 0.1}), d->make_point({0.4, 0.3})), d->make_point({0, -0.6})},
  };
  for (const auto& c : cases) {
    const auto rep = check_projection_inequality(*c.space, c.set, c.x, 21, 64, tolerance::contract);
    EXPECT_TRUE(rep.passed()) << c.space->id() << " " << c.set.describe() << ": " << rep.summary();
  }
}

TEST(Projection, NonexpansiveOnPairs) {
  auto e = R2(), r = River();
  EXPECT_TRUE(check_projection_nonexpansive(*e, ConvexSetSpec::box({{-1, 1}, {0, 2}}), 2, 5000, 1e-9).passed());
  EXPECT_TRUE(check_projection_nonexpansive(*r, ConvexSetSpec::x_axis(2), 2, 5000, 1e-9).passed());
  EXPECT_TRUE(check_projection_nonexpansive(*r, ConvexSetSpec::segment(r->make_point({-2, 1}), r->make_point({2, 3})),
                                            2, 2000, 1e-9)
                  .passed());
}

TEST(Projection, UnsupportedSetKindThrows) {
  auto d = Disk();
  EXPECT_THROW(d->project(ConvexSetSpec::box({{-0.1, 0.1}, {-0.1, 0.1}}), d->make_point({0.5, 0.5})), Unsupported);
}

TEST(AsymptoticCenter, SinglePoint) {
  auto s = Disk();
  const Point p = s->make_point({0.2, -0.1});
  const std::vector<Point> w{p};
  const auto c = estimate_asymptotic_center(*s, w);
  EXPECT_EQ(c.center, p);
  EXPECT_EQ(c.radius, 0.0);
}

TEST(AsymptoticCenter, TwoEuclideanPoints) {
  auto s = R2();
  const std::vector<Point> w{s->make_point({-1, 0}), s->make_point({1, 0})};
  const auto c = estimate_asymptotic_center(*s, w);
  EXPECT_NEAR(c.center[0], 0.0, 1e-9);
  EXPECT_NEAR(c.center[1], 0.0, 1e-9);
  EXPECT_NEAR(c.radius, 1.0, 1e-9);
  EXPECT_TRUE(c.approximate);
}

TEST(AsymptoticCenter, RiverPairMeetsOnSpine) {
  auto s = River();
  const std::vector<Point> w{s->make_point({-2, 1}), s->make_point({2, 1})};
  const auto c = estimate_asymptotic_center(*s, w);
  EXPECT_NEAR(s->distance(c.center, s->make_point({0, 0})), 0.0, 1e-9);
  EXPECT_NEAR(c.radius, 3.0, 1e-9);
}

TEST(AsymptoticCenter, TriangleCircumcenter) {
  // Acute triangle: the minimax point is the circumcenter.
  auto s = R2();
  const std::vector<Point> w{s->make_point({0, 0}), s->make_point({4, 0}), s->make_point({1, 3})};
  const auto c = estimate_asymptotic_center(*s, w);
  // Circumcenter of (0,0),(4,0),(1,3) is (2,1), radius sqrt(5).
  EXPECT_NEAR(c.center[0], 2.0, 1e-6);
  EXPECT_NEAR(c.center[1], 1.0, 1e-6);
  EXPECT_NEAR(c.radius, std::sqrt(5.0), 1e-6);
}

TEST(AsymptoticCenter, EmptyWindowThrows) {
  auto s = R2();
  EXPECT_THROW(estimate_asymptotic_center(*s, {}), DomainError);
}

TEST(ViolationReport, MergeKeepsWorstWitness) {
  ViolationReport a, b;
  a.check = b.check = "x";
  a.tolerance = b.tolerance = 0.1;
  a.record(0.5, [](auto&, auto& p) { p = {1.0}; });
  b.record(0.9, [](auto&, auto& p) { p = {2.0}; });
  b.record(0.0);
  a.merge(b);
  EXPECT_EQ(a.samples_tested, 3u);
  EXPECT_EQ(a.violations, 2u);
  EXPECT_EQ(a.worst_violation, 0.9);
  ASSERT_EQ(a.witness_params.size(), 1u);
  EXPECT_EQ(a.witness_params[0], 2.0);
}
