#include <random>
#include <set>

#include <gtest/gtest.h>

#include "limitlab/classify.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/limits.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

// Eventual cycle of an orbit by plain iteration with a visited set.
std::vector<TreePoint> cycle_by_iteration(const PwAffineTreeMap& f, TreePoint x) {
  std::map<TreePoint, std::size_t> seen;
  std::vector<TreePoint> orbit;
  x = f.space().canonical(x);
  while (!seen.count(x)) {
    seen[x] = orbit.size();
    orbit.push_back(x);
    x = f.evaluate(x);
  }
  std::vector<TreePoint> cycle(orbit.begin() + static_cast<std::ptrdiff_t>(seen[x]), orbit.end());
  std::sort(cycle.begin(), cycle.end());
  return cycle;
}

std::vector<TreePoint> sorted(std::vector<TreePoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<TreePoint> whole_grid(const TreeSpace& s, unsigned bits) { return SubtreeSet::whole(s).sample(s, dyadic(bits)); }

}  // namespace

TEST(Omega, DyadicOrbitsMatchIterationOracle) {
  std::vector<ExampleSystem> systems{build_tent_tail(), build_star_map(5), build_e616_star(4)};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) systems.push_back(build_random_monotone_star(seed));
  for (const auto& ex : systems) {
    for (const auto& p : whole_grid(ex.space(), 5)) {
      const auto w = omega_limit(ex.map, p, dyadic(10));
      ASSERT_TRUE(w.exact) << ex.name << " " << format_point(ex.space(), p);
      ASSERT_EQ(w.points.points(), cycle_by_iteration(ex.map, p)) << ex.name << " " << format_point(ex.space(), p);
    }
  }
}

TEST(Omega, TentTailInteriorFallsToZero) {
  const auto g = build_tent_tail();
  const TreeSpace& s = g.space();
  EXPECT_EQ(omega_limit(g.map, s.point(0, make_rational(3, 4)), dyadic(10)).points.points(),
            std::vector<TreePoint>{s.point(0, 0)});
  EXPECT_EQ(omega_limit(g.map, s.point(0, 1), dyadic(10)).points.points(), std::vector<TreePoint>{s.point(0, 1)});
  EXPECT_EQ(omega_limit(g.map, s.point(0, make_rational(1, 3)), dyadic(10)).points.points(),
            std::vector<TreePoint>{s.point(0, 0)});
  EXPECT_THROW(omega_limit(g.map, s.point(0, 0), 0), Error);
}

TEST(Omega, ShiftOfZAtDyadicResolution) {
  const ShiftSystem sh = build_shift_example();
  for (unsigned m = 1; m <= 12; ++m) {
    const auto w = omega_limit(sh, SymbolicPoint::shifted_z(0), dyadic(m));
    std::vector<SymbolicPoint> expected;
    for (std::uint64_t i = 0; i <= m; ++i) expected.push_back(SymbolicPoint::landmark(i));
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(w.points.points(), expected) << "m=" << m;
  }
}

TEST(Alpha, TentTailZeroIsDenseInTheInterval) {
  const auto g = build_tent_tail();
  const Rational eps = dyadic(8);
  const auto a = alpha_limit(g.map, TreePoint{0, 0}, eps);
  EXPECT_TRUE(a.converged);
  // the 2^-12 grid is within 2^-13 of [0,1]
  EXPECT_LE(hausdorff_distance(g.space(), a.points.points(), whole_grid(g.space(), 12)) + dyadic(13), eps);
}

TEST(Alpha, StarCenterIsDenseInTheStar) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto s = build_star_map(n);
    const auto a = alpha_limit(s.map, s.landmark("z0"), dyadic(8));
    EXPECT_LE(hausdorff_distance(s.space(), a.points.points(), whole_grid(s.space(), 12)) + dyadic(13), dyadic(8))
        << s.name;
  }
}

TEST(Alpha, E616InteriorPointHasItsEndpoint) {
  const auto e = build_e616_star(10);
  for (EdgeId beam = 0; beam < 10; ++beam) {
    const TreePoint x = e.space().point(beam, make_rational(1, 3));
    const auto a = alpha_limit(e.map, x, dyadic(8));
    EXPECT_EQ(a.points.points(), std::vector<TreePoint>{e.landmark("z" + std::to_string(beam + 1))});
  }
}

TEST(SpecialAlpha, TentTailZeroIsTheTwoFixedPoints) {
  const auto g = build_tent_tail();
  const std::vector<TreePoint> expected{TreePoint{0, 0}, TreePoint{0, 1}};
  for (std::size_t depth : {20, 32, 64}) {
    const auto sa = special_alpha_limit_direct(g.map, TreePoint{0, 0}, dyadic(10), depth);
    EXPECT_TRUE(sa.exact);
    EXPECT_EQ(sa.points.points(), expected) << depth;
  }
}

TEST(SpecialAlpha, StarCenterIsCenterAndEndpoints) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto s = build_star_map(n);
    std::vector<TreePoint> expected;
    for (const auto& [label, p] : s.landmarks) expected.push_back(p);
    const auto sa = special_alpha_limit_direct(s.map, s.landmark("z0"), dyadic(10));
    EXPECT_EQ(sa.points.points(), sorted(expected)) << s.name;
  }
}

TEST(SpecialAlpha, TruncatedInfiniteStarHasEveryPeriod) {
  const auto inf = build_infinite_star(10);
  const auto sa = special_alpha_limit_direct(inf.map, inf.landmark("z0"), dyadic(10));
  EXPECT_TRUE(sa.points.contains(inf.landmark("z0")));
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto orbit = infinite_star_orbit(inf, n);
    for (const auto& z : orbit) EXPECT_TRUE(sa.points.contains(z)) << "period " << n;
    EXPECT_EQ(minimal_period(inf.map, orbit.front(), 64), n);
  }
}

TEST(SpecialAlpha, E616CenterIsCenterAndEndpoints) {
  const auto e = build_e616_star(10);
  std::vector<TreePoint> expected;
  for (const auto& [label, p] : e.landmarks) expected.push_back(p);
  EXPECT_EQ(special_alpha_limit_direct(e.map, e.landmark("z0"), dyadic(8)).points.points(), sorted(expected));
}

TEST(SpecialAlpha, ContainedInAlpha) {
  std::vector<ExampleSystem> systems{build_tent_tail(), build_star_map(3), build_e616_star(5)};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) systems.push_back(build_random_monotone_star(seed));
  const Rational eps = dyadic(8);
  for (const auto& ex : systems) {
    for (const auto& p : whole_grid(ex.space(), 3)) {
      const auto sa = special_alpha_limit_direct(ex.map, p, eps, 32);
      if (sa.empty()) continue;
      const auto a = alpha_limit(ex.map, p, eps, 32);
      ASSERT_FALSE(a.empty()) << ex.name << " " << format_point(ex.space(), p);
      EXPECT_LE(directed_hausdorff(ex.space(), sa.points.points(), a.points.points()), 2 * eps)
          << ex.name << " " << format_point(ex.space(), p);
    }
  }
}

TEST(SpecialAlpha, TheoremPathAgreesWithDirectPath) {
  std::vector<ExampleSystem> systems{build_tent_tail(), build_star_map(4), build_e616_star(4), build_collapse_star()};
  const Rational eps = dyadic(8);
  for (const auto& ex : systems) {
    NonwanderingOracle nw(ex.map);
    for (const auto& p : whole_grid(ex.space(), 3)) {
      const auto direct = special_alpha_limit_direct(ex.map, p, eps, 32);
      const auto via = special_alpha_limit_via_theorem(ex.map, p, eps, nw, 32);
      ASSERT_EQ(direct.empty(), via.empty()) << ex.name << " " << format_point(ex.space(), p);
      if (direct.empty()) continue;
      EXPECT_LE(hausdorff_distance(ex.space(), direct.points, via.points), 2 * eps)
          << ex.name << " " << format_point(ex.space(), p);
    }
  }
}

TEST(BranchAlpha, StayPolicyAtTentTailZero) {
  const auto g = build_tent_tail();
  const auto b = branch_alpha_limit(g.map, TreePoint{0, 0}, BranchChoice{}, dyadic(10));
  EXPECT_EQ(b.points.points(), (std::vector<TreePoint>{TreePoint{0, 0}}));
  const auto far = branch_alpha_limit(g.map, TreePoint{0, 0}, BranchChoice{BranchPolicy::FarthestFromRoot, {}}, dyadic(10));
  const auto sa = special_alpha_limit_direct(g.map, TreePoint{0, 0}, dyadic(10));
  for (const auto& q : far.points) EXPECT_LE(distance_to_set(g.space(), q, sa.points.points()), dyadic(9));
}

TEST(BranchAlpha, NegativeOrbitIsAnOrbit) {
  const auto s = build_star_map(3);
  for (auto policy : {BranchPolicy::StayAtRoot, BranchPolicy::Leftmost, BranchPolicy::FarthestFromRoot}) {
    const auto b = branch_alpha_limit(s.map, s.landmark("z0"), BranchChoice{policy, {}}, dyadic(10), 24);
    const auto& orbit = b.negative_orbit;
    ASSERT_FALSE(orbit.empty());
    EXPECT_EQ(orbit.front(), s.landmark("z0"));
    for (std::size_t i = 1; i < orbit.size(); ++i) ASSERT_EQ(s.map.evaluate(orbit[i]), orbit[i - 1]);
  }
}

TEST(Limits, DeterministicAcrossRuns) {
  const auto inf = build_infinite_star(6);
  const auto a = special_alpha_limit_direct(inf.map, inf.landmark("z0"), dyadic(10));
  const auto b = special_alpha_limit_direct(inf.map, inf.landmark("z0"), dyadic(10));
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.note, b.note);
  const auto c = alpha_limit(inf.map, inf.landmark("z0"), dyadic(8));
  const auto d = alpha_limit(inf.map, inf.landmark("z0"), dyadic(8));
  EXPECT_EQ(c.points, d.points);
}
