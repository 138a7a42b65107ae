#include <gtest/gtest.h>

#include "limitlab/examples.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

// Z spelled out: 1, 01, 001, 0001, ...
std::vector<int> z_prefix(std::size_t length) {
  std::vector<int> out;
  for (std::size_t gap = 0; out.size() < length; ++gap) {
    for (std::size_t i = 0; i < gap && out.size() < length; ++i) out.push_back(0);
    if (out.size() < length) out.push_back(1);
  }
  return out;
}

}  // namespace

TEST(KFormula, MatchesCoordinateOracle) {
  const auto z = z_prefix(5000);
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const std::uint64_t k = k_formula(n);
    EXPECT_EQ(k, n * (n - 1) / 2 + n);
    // sigma^{k_n}(Z) starts with n zeros, then a one
    for (std::uint64_t i = 0; i < n; ++i) ASSERT_EQ(z[k + i], 0) << "n=" << n << " i=" << i;
    ASSERT_EQ(z[k + n], 1) << "n=" << n;
    EXPECT_EQ(first_one_of_shifted_z(k), n + 1);
  }
  EXPECT_THROW(k_formula(0), Error);
}

TEST(Catalog, EveryTreeEntryBuilds) {
  for (const auto& info : example_catalog()) {
    if (info.name == "shift") continue;
    std::string spec = info.name;
    if (auto c = spec.find(':'); c != std::string::npos)
      spec = spec.substr(0, c + 1) + (spec.substr(0, c) == "dendroid" ? "4,6" : "3");
    EXPECT_NO_THROW(build_example(spec)) << spec;
  }
}

TEST(BuildExample, RejectsBadSpecs) {
  EXPECT_THROW(build_example("nope"), Error);
  EXPECT_THROW(build_example("star:"), Error);
  EXPECT_THROW(build_example("star:x"), Error);
  EXPECT_THROW(build_example("tent-tail:3"), Error);
  EXPECT_THROW(build_example("dendroid:4"), Error);
  EXPECT_THROW(build_example("star:0"), Error);
  EXPECT_EQ(build_example("random:7").name, "random:7");
}

TEST(InfiniteStar, SubStarBeamsHaveLengthOneOverN) {
  const auto inf = build_infinite_star(10);
  const TreePoint z0 = inf.landmark("z0");
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto orbit = infinite_star_orbit(inf, n);
    ASSERT_EQ(orbit.size(), n);
    for (const auto& z : orbit) {
      EXPECT_EQ(inf.space().distance(z, z0), make_rational(1, static_cast<long>(n)));
      EXPECT_EQ(inf.map.iterate(z, n), z);
    }
  }
}

TEST(E616, CenterAndEndpointsAreFixed) {
  const auto e = build_e616_star(10);
  EXPECT_EQ(e.map.evaluate(e.landmark("z0")), e.landmark("z0"));
  for (int n = 1; n <= 10; ++n) {
    const TreePoint z = e.landmark("z" + std::to_string(n));
    EXPECT_EQ(e.map.evaluate(z), z);
    EXPECT_EQ(e.space().distance(z, e.landmark("z0")), make_rational(1, n));
  }
}

TEST(Dendroid, MatchedEpsilonAndT1Orbit) {
  EXPECT_EQ(dendroid_matched_epsilon(12), make_rational(1, 32));
  const auto d = build_dendroid_example(8, 12);
  EXPECT_FALSE(is_regular_curve(d));
  EXPECT_EQ(suggested_epsilon(d), make_rational(1, 32));
  EXPECT_EQ(d.map.evaluate(d.landmark("T1")), d.landmark("T0"));
  EXPECT_EQ(d.map.evaluate(d.landmark("T0")), d.landmark("T0"));
  EXPECT_EQ(d.map.evaluate(d.landmark("T3")), d.landmark("T2"));
  EXPECT_EQ(d.map.evaluate(d.landmark("e3")), d.landmark("e4"));
  EXPECT_EQ(d.map.evaluate(d.landmark("T-1")), d.landmark("e0"));
}

TEST(RandomStar, SlopesAreFlatOrExpanding) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = build_random_monotone_star(seed);
    EXPECT_TRUE(is_regular_curve(r));
    for (const auto& p : r.map.pieces()) {
      const Rational s = p.slope < 0 ? Rational(-p.slope) : p.slope;
      ASSERT_TRUE(s == 0 || s >= 2) << r.name << " slope " << to_string(p.slope);
    }
    EXPECT_EQ(r.map.evaluate(r.landmark("z0")), r.landmark("z0"));
  }
}

TEST(RandomStar, SeedDeterminesTheMap) {
  const auto a = build_random_monotone_star(11), b = build_random_monotone_star(11);
  ASSERT_EQ(a.map.pieces().size(), b.map.pieces().size());
  for (std::size_t i = 0; i < a.map.pieces().size(); ++i) {
    EXPECT_EQ(a.map.pieces()[i].offset, b.map.pieces()[i].offset);
    EXPECT_EQ(a.map.pieces()[i].slope, b.map.pieces()[i].slope);
  }
}
