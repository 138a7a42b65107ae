#include <set>

#include <gtest/gtest.h>

#include "limitlab/classify.hpp"
#include "limitlab/examples.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

// Smallest n <= max with f^n(x) = x, by plain iteration.
std::optional<std::size_t> period_by_iteration(const PwAffineTreeMap& f, const TreePoint& x0, std::size_t max) {
  const TreePoint x = f.space().canonical(x0);
  TreePoint y = x;
  for (std::size_t n = 1; n <= max; ++n) {
    y = f.evaluate(y);
    if (y == x) return n;
  }
  return std::nullopt;
}

// Candidate periodic points: parameters j/d for d = 2^k and 2^k - 1. Slope-2
// maps with dyadic breakpoints have all their periodic points among these.
std::vector<TreePoint> candidate_grid(const TreeSpace& s, unsigned max_k) {
  std::vector<TreePoint> out;
  for (EdgeId e = 0; e < s.edge_count(); ++e)
    for (unsigned k = 1; k <= max_k; ++k)
      for (long d : {1L << k, (1L << k) - 1})
        for (long j = 0; j <= d; ++j) out.push_back(s.point(e, make_rational(j, d)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool reported_periodic(const TreeSpace& s, const PeriodicPoints& pp, const TreePoint& x) {
  for (const auto& o : pp.orbits)
    for (const auto& q : o.points)
      if (q == x) return true;
  for (const auto& iv : pp.intervals) {
    Rational t;
    if (detail::lies_on_edge(s, x, iv.edge, t) && iv.lo <= t && t <= iv.hi) return true;
  }
  return false;
}

}  // namespace

TEST(PeriodicPoints, StarMapsHaveCenterAndEndpointOrbit) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto s = build_star_map(n);
    const auto pp = periodic_points(s.map, n);
    ASSERT_EQ(pp.orbits.size(), 2u) << s.name;
    std::multiset<std::size_t> periods;
    for (const auto& o : pp.orbits) periods.insert(o.period);
    EXPECT_EQ(periods, (std::multiset<std::size_t>{1, n})) << s.name;
    EXPECT_TRUE(pp.intervals.empty());
    std::vector<TreePoint> found, expected;
    for (const auto& o : pp.orbits) found.insert(found.end(), o.points.begin(), o.points.end());
    for (const auto& [label, p] : s.landmarks) expected.push_back(p);
    std::sort(found.begin(), found.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(found, expected) << s.name;
  }
}

TEST(PeriodicPoints, AgreeWithGridScan) {
  std::vector<ExampleSystem> systems{build_tent_tail(), build_star_map(3), build_star_map(4), build_e616_star(3),
                                     build_infinite_star(4), build_collapse_star()};
  for (const auto& ex : systems) {
    const std::size_t max = 4;
    const auto pp = periodic_points(ex.map, max);
    for (const auto& o : pp.orbits) {
      ASSERT_EQ(period_by_iteration(ex.map, o.base, max), o.period) << ex.name;
      ASSERT_EQ(o.points.size(), o.period);
    }
    for (const auto& x : candidate_grid(ex.space(), 7)) {
      if (!period_by_iteration(ex.map, x, max)) continue;
      ASSERT_TRUE(reported_periodic(ex.space(), pp, x)) << ex.name << " missed " << format_point(ex.space(), x);
    }
  }
}

TEST(PeriodicPoints, ReportedOrbitsArePeriodicOnRandomStars) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto r = build_random_monotone_star(seed);
    const auto pp = periodic_points(r.map, 6);
    for (const auto& o : pp.orbits) ASSERT_EQ(period_by_iteration(r.map, o.base, 6), o.period) << r.name;
    for (const auto& iv : pp.intervals) {
      const TreePoint mid = r.space().point(iv.edge, (iv.lo + iv.hi) / 2);
      ASSERT_TRUE(period_by_iteration(r.map, mid, iv.period)) << r.name;
    }
  }
}

TEST(PeriodicPoints, IdentityGivesIntervals) {
  const auto id = build_identity_star(3);
  const auto pp = periodic_points(id.map, 2);
  EXPECT_EQ(pp.intervals.size(), 3u);
  EXPECT_THROW(periodic_points(id.map, 0), Error);
}

TEST(MinimalPeriod, MatchesIteration) {
  const auto s = build_star_map(7);
  EXPECT_EQ(minimal_period(s.map, s.landmark(star_tip_name(7, 3)), 64), 7u);
  EXPECT_EQ(minimal_period(s.map, s.landmark("z0"), 64), 1u);
  EXPECT_FALSE(minimal_period(s.map, TreePoint{0, make_rational(3, 4)}, 64).has_value());
}

TEST(Nonwandering, TentTail) {
  const auto g = build_tent_tail();
  EXPECT_TRUE(is_nonwandering(g.map, TreePoint{0, 0}, dyadic(5)).passed());
  EXPECT_TRUE(is_nonwandering(g.map, TreePoint{0, 1}, dyadic(5)).passed());
  const Verdict v = is_nonwandering(g.map, TreePoint{0, make_rational(3, 4)}, dyadic(5));
  EXPECT_TRUE(v.failed());
  EXPECT_FALSE(v.budget_relative);
  EXPECT_THROW(is_nonwandering(g.map, TreePoint{0, 0}, 0), Error);
}

TEST(Nonwandering, OracleMatchesDirectCalls) {
  const auto s = build_star_map(3);
  NonwanderingOracle nw(s.map);
  for (const auto& p : SubtreeSet::whole(s.space()).sample(s.space(), dyadic(3))) {
    const Verdict a = nw.verdict(p, dyadic(6));
    const Verdict b = is_nonwandering(s.map, p, dyadic(6));
    EXPECT_EQ(a.outcome, b.outcome) << format_point(s.space(), p);
    EXPECT_EQ(nw.verdict(p, dyadic(6)).outcome, a.outcome);
  }
}

TEST(Recurrent, PeriodicPassesWanderingFails) {
  const auto s = build_star_map(5);
  EXPECT_TRUE(is_recurrent(s.map, s.landmark(star_tip_name(5, 2)), dyadic(10)).passed());
  const Verdict v = is_recurrent(s.map, TreePoint{1, make_rational(3, 4)}, dyadic(10));
  EXPECT_TRUE(v.failed());
}

TEST(AlmostPeriodic, GapIsPeriodMinusOne) {
  for (std::size_t n : {1, 3, 6}) {
    const auto s = build_star_map(n);
    const Verdict v = is_almost_periodic(s.map, s.landmark(star_tip_name(n, 0)), dyadic(10));
    ASSERT_TRUE(v.passed());
    ASSERT_TRUE(v.witness.time.has_value());
    EXPECT_EQ(*v.witness.time, static_cast<std::int64_t>(n) - 1);
  }
  const auto g = build_tent_tail();
  EXPECT_TRUE(is_almost_periodic(g.map, TreePoint{0, make_rational(3, 4)}, dyadic(10)).failed());
}

TEST(Dendroid, T1IsNonwanderingButNotRecurrent) {
  const auto d = build_dendroid_example(8, 12);
  const TreePoint t1 = d.landmark("T1");
  const Verdict r = is_recurrent(d.map, t1, dyadic(10));
  ASSERT_TRUE(r.failed());
  ASSERT_TRUE(r.witness.distance.has_value());
  EXPECT_EQ(*r.witness.distance, make_rational(1, 2));
  const Verdict nw = is_nonwandering(d.map, t1, dendroid_matched_epsilon(12));
  ASSERT_TRUE(nw.passed());
  EXPECT_EQ(nw.witness.time, 4);
  // the finite model resolves no return at a finer radius
  EXPECT_FALSE(is_nonwandering(d.map, t1, dyadic(10)).passed());
}

TEST(Minimal, PeriodicOrbitIsMinimal) {
  const auto s = build_star_map(4);
  std::vector<TreePoint> orbit;
  for (std::size_t k = 0; k < 4; ++k) orbit.push_back(s.landmark(star_tip_name(4, k)));
  EXPECT_TRUE(is_minimal(s.map, orbit, dyadic(10)).passed());
  orbit.push_back(s.landmark("z0"));
  EXPECT_TRUE(is_minimal(s.map, orbit, dyadic(10)).failed());
  EXPECT_THROW(is_minimal(s.map, std::vector<TreePoint>{}, dyadic(10)), Error);
}

TEST(Basin, TentTailZeroAttractsAllButOne) {
  const auto g = build_tent_tail();
  const auto grid = sample_grid(g.space(), dyadic(4));
  const std::vector<TreePoint> target{TreePoint{0, 0}};
  const auto b = basin(g.map, target, grid, dyadic(10));
  EXPECT_EQ(b.size(), grid.size() - 1);
  for (const auto& p : b) EXPECT_NE(p, (TreePoint{0, 1}));
}

TEST(WeakIncompressibility, OrbitVersusTwoFixedPoints) {
  const auto s = build_star_map(2);
  const std::vector<TreePoint> orbit{s.landmark(star_tip_name(2, 0)), s.landmark(star_tip_name(2, 1))};
  EXPECT_TRUE(check_weak_incompressibility(s.map, orbit, std::vector<TreePoint>{orbit[0]}, dyadic(10)).passed());
  const auto g = build_tent_tail();
  const std::vector<TreePoint> fixed{TreePoint{0, 0}, TreePoint{0, 1}};
  EXPECT_TRUE(check_weak_incompressibility(g.map, fixed, std::vector<TreePoint>{fixed[0]}, dyadic(10)).failed());
}
