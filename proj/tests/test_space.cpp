#include <random>

#include <gtest/gtest.h>

#include "limitlab/examples.hpp"
#include "limitlab/space.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

// Star with beams of lengths 1, 1/2, 1/3 from the center c.
std::shared_ptr<const TreeSpace> star() {
  return std::make_shared<const TreeSpace>(
      std::vector<std::string>{"c", "p", "q", "r"},
      std::vector<Edge>{Edge{"P", 0, 1, 1}, Edge{"Q", 0, 2, make_rational(1, 2)}, Edge{"R", 3, 0, make_rational(1, 3)}},
      0);
}

// Distance from the center along the beam, independent of TreeSpace.
Rational depth(const TreeSpace& s, const TreePoint& p) {
  const Edge& e = s.edge(p.edge);
  return (e.from == 0 ? p.t : 1 - p.t) * e.length;
}

Rational oracle_distance(const TreeSpace& s, const TreePoint& a, const TreePoint& b) {
  if (a.edge == b.edge) {
    Rational d = (a.t - b.t) * s.edge(a.edge).length;
    return d < 0 ? Rational(-d) : d;
  }
  return depth(s, a) + depth(s, b);
}

TreePoint random_point(const TreeSpace& s, std::mt19937_64& rng) {
  const EdgeId e = rng() % s.edge_count();
  return s.point(e, make_rational(static_cast<long>(rng() % 65), 64));
}

}  // namespace

TEST(TreeSpace, RejectsMalformedTrees) {
  EXPECT_THROW(TreeSpace({"a", "b"}, {}, 0), Error);
  EXPECT_THROW(TreeSpace({"a", "b"}, {Edge{"I", 0, 1, 0}}, 0), Error);
  EXPECT_THROW(TreeSpace({"a", "b"}, {Edge{"I", 0, 0, 1}}, 0), Error);
  EXPECT_THROW(TreeSpace({"a", "b"}, {Edge{"I", 0, 5, 1}}, 0), Error);
}

TEST(TreeSpace, CanonicalVertexPointsCompareEqual) {
  auto s = star();
  const TreePoint end_of_r = s->canonical(TreePoint{2, 1});
  EXPECT_EQ(end_of_r, s->vertex_point(0));
  EXPECT_EQ(s->canonical(TreePoint{0, 0}), end_of_r);
  EXPECT_TRUE(s->same_point(TreePoint{1, 0}, TreePoint{2, 1}));
  EXPECT_FALSE(s->same_point(TreePoint{1, make_rational(1, 2)}, TreePoint{0, make_rational(1, 2)}));
  EXPECT_EQ(s->vertex_at(TreePoint{1, 1}), s->find_vertex("q"));
}

TEST(TreeSpace, DistanceMatchesBeamOracle) {
  auto s = star();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const TreePoint a = random_point(*s, rng), b = random_point(*s, rng);
    ASSERT_EQ(s->distance(a, b), oracle_distance(*s, a, b)) << format_point(*s, a) << " " << format_point(*s, b);
  }
}

TEST(TreeSpace, MetricAxioms) {
  auto s = star();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const TreePoint a = random_point(*s, rng), b = random_point(*s, rng), c = random_point(*s, rng);
    EXPECT_EQ(s->distance(a, b), s->distance(b, a));
    EXPECT_LE(s->distance(a, c), s->distance(a, b) + s->distance(b, c));
    EXPECT_EQ(s->distance(a, a), 0);
  }
  EXPECT_EQ(s->diameter(), make_rational(3, 2));
  EXPECT_EQ(s->total_length(), make_rational(11, 6));
  EXPECT_EQ(s->shortest_edge(), make_rational(1, 3));
}

TEST(TreeSpace, MetricLinkShortensDistance) {
  const ExampleSystem d = build_dendroid_example(3, 4);
  const TreeSpace& s = d.space();
  // sigma^2(Z) = 1 0 0 1 ... and T1 = 1 0 0 0 ... first differ at 4.
  EXPECT_EQ(s.distance(d.landmark("e2"), d.landmark("T1")), dyadic(4));
  // sigma(Z) = 0 1 0 0 1 ... and T2 = 0 1 0 0 0 ... first differ at 5.
  EXPECT_EQ(s.distance(d.landmark("e1"), d.landmark("T2")), dyadic(5));
  EXPECT_EQ(s.distance(d.landmark("T0"), d.landmark("T1")), make_rational(1, 2));
  EXPECT_EQ(s.distance(d.landmark("T0"), d.landmark("e1")), make_rational(1, 4));
}

TEST(SubtreeSet, ComponentsAndMembership) {
  auto s = star();
  const auto a = SubtreeSet::from_parts(*s, {Interval{0, make_rational(1, 4), make_rational(1, 2)}});
  const auto b = SubtreeSet::from_parts(*s, {Interval{1, 0, 1}, Interval{2, make_rational(1, 2), 1}});
  const auto u = a.unite(*s, b);
  EXPECT_EQ(a.components(*s).size(), 1u);
  EXPECT_EQ(u.components(*s).size(), 2u);
  EXPECT_TRUE(u.contains(*s, s->vertex_point(0)));
  EXPECT_TRUE(u.contains(*s, TreePoint{0, make_rational(3, 8)}));
  EXPECT_FALSE(u.contains(*s, TreePoint{0, make_rational(5, 8)}));
  EXPECT_TRUE(a.subset_of(u));
  EXPECT_FALSE(u.subset_of(a));
  EXPECT_FALSE(a.intersects(b));
  EXPECT_EQ(mesh(*s, u), make_rational(2, 3));
}

TEST(SubtreeSet, SampleLiesInSetAndCoversIt) {
  auto s = star();
  const auto set = SubtreeSet::from_parts(*s, {Interval{0, 0, make_rational(1, 2)}, Interval{1, 0, 1}});
  const Rational pitch = dyadic(5);
  const auto pts = set.sample(*s, pitch);
  for (const auto& p : pts) EXPECT_TRUE(set.contains(*s, p));
  const auto fine = set.sample(*s, dyadic(9));
  EXPECT_LE(directed_hausdorff(*s, fine, pts), pitch);
}

TEST(Ball, MembershipMatchesDistance) {
  auto s = star();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const TreePoint c = random_point(*s, rng);
    const Rational r = make_rational(1 + static_cast<long>(rng() % 40), 48);
    const Ball b = ball(*s, c, r);
    for (int j = 0; j < 40; ++j) {
      const TreePoint q = random_point(*s, rng);
      ASSERT_EQ(b.set.contains(*s, q), s->distance(c, q) <= r)
          << format_point(*s, c) << " r=" << to_string(r) << " q=" << format_point(*s, q);
    }
    for (const auto& q : b.boundary) EXPECT_TRUE(b.set.contains(*s, q));
  }
  EXPECT_THROW(ball(*s, TreePoint{0, 0}, 0), Error);
}

TEST(Hausdorff, IndexedAgreesWithBruteForce) {
  auto s = star();
  std::mt19937_64 rng(5);
  auto metric = [&](const TreePoint& a, const TreePoint& b) { return s->distance(a, b); };
  for (int i = 0; i < 200; ++i) {
    std::vector<TreePoint> a, b;
    for (std::size_t k = 1 + rng() % 8; k > 0; --k) a.push_back(random_point(*s, rng));
    for (std::size_t k = 1 + rng() % 8; k > 0; --k) b.push_back(random_point(*s, rng));
    ASSERT_EQ(hausdorff_distance(*s, a, b),
              hausdorff_distance_brute(std::span<const TreePoint>(a), std::span<const TreePoint>(b), metric));
  }
}

TEST(Hausdorff, PseudometricProperties) {
  auto s = star();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    std::vector<TreePoint> a, b, c;
    for (int k = 0; k < 4; ++k) {
      a.push_back(random_point(*s, rng));
      b.push_back(random_point(*s, rng));
      c.push_back(random_point(*s, rng));
    }
    EXPECT_EQ(hausdorff_distance(*s, a, a), 0);
    EXPECT_EQ(hausdorff_distance(*s, a, b), hausdorff_distance(*s, b, a));
    EXPECT_LE(hausdorff_distance(*s, a, c), hausdorff_distance(*s, a, b) + hausdorff_distance(*s, b, c));
  }
  std::vector<TreePoint> empty, one{TreePoint{0, 0}};
  EXPECT_THROW(hausdorff_distance(*s, empty, one), Error);
}

TEST(ThinAlongEdges, StaysWithinRadius) {
  auto s = star();
  std::mt19937_64 rng(13);
  std::vector<TreePoint> pts;
  for (int i = 0; i < 300; ++i) pts.push_back(random_point(*s, rng));
  const Rational r = dyadic(4);
  const auto thin = thin_along_edges(*s, pts, r);
  EXPECT_LT(thin.size(), pts.size());
  EXPECT_LE(directed_hausdorff(*s, pts, thin), r);
}

TEST(FormatPoint, EdgeAndExactParameter) {
  auto s = star();
  EXPECT_EQ(format_point(*s, TreePoint{1, make_rational(2, 6)}), "Q:1/3");
  EXPECT_EQ(format_point(*s, TreePoint{0, 1}), "P:1/1");
}
