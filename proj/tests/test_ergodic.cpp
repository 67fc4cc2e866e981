#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hadamard/error.hpp"
#include "hadamard/ergodic.hpp"
#include "hadamard/spaces.hpp"
#include "oracles.hpp"

using namespace hadamard;

namespace {

MappingSpec halving(const SpaceHandle& s) {
  return MappingSpec::river_product(s, PiecewiseLinear::linear(0.5), PiecewiseLinear::linear(0.5));
}

MappingSpec axis_map(const SpaceHandle& s) {
  return MappingSpec::river_product(s, PiecewiseLinear::identity(), PiecewiseLinear::linear(0.5));
}

}  // namespace

TEST(Orbit, IdentityIsConstant) {
  auto s = make_space("disk");
  const auto x = s->make_point({0.3, -0.2});
  const auto o = generate_orbit(MappingSpec::identity(s), x, 5);
  ASSERT_EQ(o.points.size(), 6u);
  for (const auto& p : o.points) EXPECT_EQ(p, x);
  EXPECT_EQ(orbit_replay_error(o), 0.0);
}

TEST(Orbit, QuarterTurns) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, M_PI / 2), s->make_point({1, 0}), 4);
  const double expect[5][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(o.points[i][0], expect[i][0], 1e-15);
    EXPECT_NEAR(o.points[i][1], expect[i][1], 1e-15);
  }
  EXPECT_TRUE(o.fejer.passed());
  EXPECT_EQ(o.horizon(), 4u);
}

TEST(Orbit, RiverHalving) {
  auto s = make_space("river");
  const auto o = generate_orbit(halving(s), s->make_point({2, 2}), 2);
  EXPECT_EQ(o.points[1], s->make_point({1, 1}));
  EXPECT_EQ(o.points[2], s->make_point({0.5, 0.5}));
  EXPECT_TRUE(o.fejer.passed());
}

TEST(Orbit, RejectsZeroHorizon) {
  auto s = make_space("euclidean:2");
  EXPECT_THROW(generate_orbit(MappingSpec::identity(s), s->make_point({0, 0}), 0), DomainError);
}

TEST(Schedule, DefaultAndRequiredHorizon) {
  const auto sch = default_schedule(100);
  const std::vector<std::size_t> expect{1, 2, 4, 8, 12, 16, 32, 50, 64, 100};
  EXPECT_EQ(sch, expect);
  const std::vector<std::size_t> n{1, 10}, k{1, 8};
  EXPECT_EQ(required_horizon(n, k), 17u);
  EXPECT_EQ(required_horizon(n, std::vector<std::size_t>{}), 10u);
}

TEST(MeanSequence, RotationMeansShrinkLikeOneOverN) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, 1.0), s->make_point({1, 0}), 1008);
  const std::vector<std::size_t> sch{1, 10, 100, 1000}, k{1, 8};
  const auto res = mean_sequence(o, sch, k);
  const double bound = 2.0 / (2.0 * std::sin(0.5));
  for (const auto& e : res.means.entries) {
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < e.n; ++m) sum += std::polar(1.0, static_cast<double>(m));
    sum /= static_cast<double>(e.n);
    EXPECT_NEAR(e.mean[0], sum.real(), 1e-10) << e.n;
    EXPECT_NEAR(e.mean[1], sum.imag(), 1e-10) << e.n;
    EXPECT_LE(std::hypot(e.mean[0], e.mean[1]), bound / static_cast<double>(e.n) + 1e-12);
    EXPECT_TRUE(e.certificate.passes());
    ASSERT_EQ(e.shifted.size(), 2u);
  }
  EXPECT_GE(res.means.worst_certificate_gap(), -1e-6);
  EXPECT_GE(res.means.worst_certificate_slack(), -1e-6);
  for (const auto& r : res.diagnostics.records) {
    EXPECT_GE(r.boundedness_slack, -1e-6);
    EXPECT_NEAR(r.orbit_proj_dist, 1.0, 1e-12);
  }
}

TEST(MeanSequence, ConstantOrbit) {
  auto s = make_space("river");
  const auto p = s->make_point({1, -1});
  const auto o = generate_orbit(MappingSpec::identity(s), p, 40);
  const std::vector<std::size_t> sch{1, 2, 8, 32}, k{1, 8};
  const auto res = mean_sequence(o, sch, k);
  for (const auto& e : res.means.entries) {
    EXPECT_EQ(e.mean, p);
    for (const auto& m : e.shifted) EXPECT_EQ(m, p);
  }
  for (const auto& r : res.diagnostics.records) EXPECT_EQ(r.residual, 0.0);
}

TEST(MeanSequence, RiverHalvingAgainstGridOracle) {
  auto s = make_space("river");
  const auto o = generate_orbit(halving(s), s->make_point({2, 2}), 1024);
  const std::vector<std::size_t> sch{4, 8, 16, 1000}, k{1};
  const auto res = mean_sequence(o, sch, k);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& e = res.means.entries[i];
    std::vector<oracle::P2> anchors;
    for (std::size_t m = 0; m < e.n; ++m) anchors.push_back({o.points[m][0], o.points[m][1]});
    const auto ref = oracle::river_mean(anchors, std::vector<double>(e.n, 1.0 / e.n));
    EXPECT_LE(oracle::river({e.mean[0], e.mean[1]}, ref.x), 1e-3) << e.n;
  }
  EXPECT_LE(res.diagnostics.records.back().residual, 1e-2);
  EXPECT_LE(s->distance(res.means.entries.back().mean, s->make_point({0, 0})), 1e-2);
}

TEST(MeanSequence, ScheduleBeyondOrbitThrows) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::identity(s), s->make_point({0, 0}), 10);
  const std::vector<std::size_t> sch{1, 10}, k{8};
  EXPECT_THROW(mean_sequence(o, sch, k), DomainError);
  const std::vector<std::size_t> bad{4, 2}, none{};
  EXPECT_THROW(mean_sequence(o, bad, none), DomainError);
}

TEST(MeanSequence, UnknownFixedSetLeavesNaN) {
  auto s = make_space("euclidean:2");
  const auto t = MappingSpec::custom(s, [s](const Point& x) { return s->make_point({0.5 * x[0], x[1]}); }, "c");
  const auto o = generate_orbit(t, s->make_point({1, 1}), 16);
  const std::vector<std::size_t> sch{4, 16}, k{};
  const auto res = mean_sequence(o, sch, k);
  EXPECT_FALSE(res.diagnostics.has_projection);
  EXPECT_TRUE(std::isnan(res.diagnostics.records[0].orbit_proj_dist));
}

TEST(HullGap, PointsInsideTheHull) {
  auto s = make_space("euclidean:2");
  const std::vector<Point> pts{s->make_point({0, 0}), s->make_point({2, 0}), s->make_point({0, 2})};
  EXPECT_LE(hull_gap(*s, s->make_point({0.5, 0.5}), pts), 1e-6);
  EXPECT_NEAR(hull_gap(*s, s->make_point({-1, 0}), pts), 1.0, 1e-6);
  for (const auto& q : hull_probes(*s, pts, 50, 12, 9)) {
    EXPECT_GE(q[0], -1e-12);
    EXPECT_GE(q[1], -1e-12);
    EXPECT_LE(q[0] + q[1], 2 + 1e-12);
  }
}

TEST(ProjectionTrace, RotationStaysAtOrigin) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, 1.0), s->make_point({0.6, 0.8}), 20);
  const auto tr = projection_trace(o);
  ASSERT_EQ(tr.size(), 21u);
  for (const auto& st : tr) {
    EXPECT_EQ(st.projection, s->make_point({0, 0}));
    EXPECT_NEAR(st.distance, 1.0, 1e-15);
  }
  EXPECT_TRUE(check_projection_monotone(tr).passed());
}

TEST(ProjectionTrace, RiverAxisHalvesDistance) {
  auto s = make_space("river");
  const auto o = generate_orbit(axis_map(s), s->make_point({3, 2}), 6);
  const auto tr = projection_trace(o);
  double d = 2.0;
  for (const auto& st : tr) {
    EXPECT_EQ(st.projection, s->make_point({3, 0}));
    EXPECT_DOUBLE_EQ(st.distance, d);
    d /= 2;
  }
}

TEST(ProjectionTrace, FixedStartAndUnknownSet) {
  auto s = make_space("river");
  const auto o = generate_orbit(axis_map(s), s->make_point({3, 0}), 6);
  for (const auto& st : projection_trace(o)) EXPECT_EQ(st.distance, 0.0);
  const auto c = MappingSpec::custom(s, [](const Point& x) { return x; }, "c");
  EXPECT_THROW(projection_trace(generate_orbit(c, s->make_point({0, 0}), 2)), Unsupported);
}

TEST(ProjectionTrace, IncreaseIsFlagged) {
  auto s = make_space("euclidean:2");
  const std::vector<ProjectionStep> tr{{s->make_point({0, 0}), 1.0}, {s->make_point({0, 0}), 1.5}};
  const auto rep = check_projection_monotone(tr);
  EXPECT_FALSE(rep.passed());
  EXPECT_DOUBLE_EQ(rep.worst_violation, 0.5);
}

TEST(Halfspace, Examples) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, 1.0), s->make_point({1, 0}), 200);
  const auto origin = s->make_point({0, 0});
  EXPECT_TRUE(halfspace_membership_check(o, origin, origin, 0).passed());
  EXPECT_TRUE(halfspace_membership_check(o, origin, s->make_point({2, 0}), 0).passed());
  const auto bad = halfspace_membership_check(o, origin, s->make_point({0.5, 0}), 0);
  EXPECT_FALSE(bad.passed());
  ASSERT_EQ(bad.witness_params.size(), 1u);
  const auto k = static_cast<std::size_t>(bad.witness_params[0]);
  EXPECT_GT(s->distance(o.points[k], origin), s->distance(o.points[k], s->make_point({0.5, 0})));
}

TEST(Halfspace, MeansAreChecked) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::identity(s), s->make_point({0, 0}), 3);
  const std::vector<Point> means{s->make_point({1, 0})};
  const auto rep = halfspace_membership_check(o, s->make_point({0, 0}), s->make_point({1, 0}), 0, means);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.witness_params[0], -1.0);
}

TEST(Verdict, RotationLongHorizonConverges) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, 1.0), s->make_point({1, 0}), 10008);
  const auto sch = default_schedule(10000);
  const std::vector<std::size_t> k{1, 8};
  const auto res = mean_sequence(o, sch, k);
  const auto v = verdict(res.means, res.diagnostics, projection_trace(o));
  EXPECT_EQ(v.status, VerdictStatus::converged);
  EXPECT_LE(v.agreement, 3e-4);
  EXPECT_EQ(v.limit_candidate, s->make_point({0, 0}));
  ASSERT_TRUE(v.converged_at);
  EXPECT_LE(*v.converged_at, 512u);
}

TEST(Verdict, RotationShortHorizonIsInconclusive) {
  auto s = make_space("euclidean:2");
  const auto o = generate_orbit(MappingSpec::rotation(s, 1.0), s->make_point({1, 0}), 10);
  const auto sch = default_schedule(10);
  const auto res = mean_sequence(o, sch, std::vector<std::size_t>{});
  const auto v = verdict(res.means, res.diagnostics, projection_trace(o));
  EXPECT_EQ(v.status, VerdictStatus::inconclusive);
  EXPECT_GT(v.agreement, 1e-2);
  EXPECT_FALSE(v.converged_at);
}

TEST(Verdict, IdentityConvergesToStart) {
  auto s = make_space("disk");
  const auto x = s->make_point({0.3, -0.2});
  const auto o = generate_orbit(MappingSpec::identity(s), x, 16);
  const auto res = mean_sequence(o, default_schedule(16), std::vector<std::size_t>{});
  const auto v = verdict(res.means, res.diagnostics, projection_trace(o));
  EXPECT_EQ(v.status, VerdictStatus::converged);
  EXPECT_EQ(v.limit_candidate, x);
  EXPECT_EQ(v.converged_at, std::optional<std::size_t>(1));
}

TEST(Verdict, WithoutFixedSetUsesCauchyGap) {
  auto s = make_space("euclidean:2");
  const auto t = MappingSpec::custom(s, [s](const Point& x) { return s->make_point({0.5 * x[0], 0.5 * x[1]}); }, "c");
  const auto o = generate_orbit(t, s->make_point({1, 1}), 4096);
  const auto res = mean_sequence(o, default_schedule(4096), std::vector<std::size_t>{});
  const auto v = verdict(res.means, res.diagnostics, {});
  EXPECT_EQ(v.status, VerdictStatus::converged);
  const auto& e = res.means.entries;
  EXPECT_NEAR(v.agreement, s->distance(e.back().mean, e[e.size() - 2].mean), 1e-15);
}
