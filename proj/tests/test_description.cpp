#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "limitlab/io/description.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(LIMITLAB_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_same_pieces(const PwAffineTreeMap& a, const PwAffineTreeMap& b) {
  ASSERT_EQ(a.pieces().size(), b.pieces().size());
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    const auto &p = a.pieces()[i], &q = b.pieces()[i];
    EXPECT_EQ(p.edge, q.edge);
    EXPECT_EQ(p.lo, q.lo);
    EXPECT_EQ(p.hi, q.hi);
    EXPECT_EQ(p.target, q.target);
    EXPECT_EQ(p.offset, q.offset);
    EXPECT_EQ(p.slope, q.slope);
  }
}

std::string first_diagnostic(const std::string& text) {
  const auto r = parse_system(text);
  return r.diagnostics.empty() ? std::string() : r.diagnostics.front().to_string();
}

}  // namespace

TEST(ParseSystem, TentTailFixtureBuildsTheTentTailMap) {
  const auto r = parse_system(fixture("tent-tail.sys"));
  ASSERT_TRUE(r.ok());
  const ExampleSystem ex = to_system(*r.description);
  expect_same_pieces(ex.map, build_tent_tail().map);
}

TEST(ParseSystem, Star3FixtureBuildsTheStarMap) {
  const auto r = parse_system(fixture("star3.sys"));
  ASSERT_TRUE(r.ok());
  const ExampleSystem ex = to_system(*r.description);
  const auto star = build_star_map(3);
  for (const auto& p : SubtreeSet::whole(star.space()).sample(star.space(), dyadic(5)))
    EXPECT_EQ(ex.map.evaluate(p), star.map.evaluate(p));
}

TEST(ParseSystem, ShippedFixturesParse) {
  for (const char* name : {"tent-tail.sys", "full-tent.sys", "star3.sys", "fork.sys", "e616.sys"}) {
    const auto r = parse_system(fixture(name));
    EXPECT_TRUE(r.ok()) << name << " " << first_diagnostic(fixture(name));
  }
}

TEST(ParseSystem, RoundTripThroughPrint) {
  for (const char* name : {"tent-tail", "star:4", "inf-star:3", "e616:5", "dendroid:4,6", "random:9", "collapse-star"}) {
    const SystemDescription d = describe(build_example(name).map);
    const std::string text = print_system(d);
    const auto r = parse_system(text);
    ASSERT_TRUE(r.ok()) << name << " " << first_diagnostic(text);
    EXPECT_EQ(*r.description, d) << name;
    EXPECT_EQ(print_system(*r.description), text) << name;
  }
}

TEST(ParseSystem, PrintedRationalsAreFractions) {
  const std::string text = print_system(describe(build_tent_tail().map));
  EXPECT_NE(text.find("1/2"), std::string::npos);
  EXPECT_EQ(text.find("0.5"), std::string::npos);
  EXPECT_NE(text.find(" 1/1"), std::string::npos);
}

TEST(ParseSystem, Diagnostics) {
  EXPECT_EQ(first_diagnostic(""), "1:1: no space declared");
  EXPECT_EQ(first_diagnostic(fixture("empty.sys")), "1:1: no space declared");
  EXPECT_EQ(first_diagnostic(fixture("bad-parameter.sys")), "4:13: parameter out of [0,1]");
  EXPECT_NE(first_diagnostic("vertex a\nedge I a c 1\n").find("unknown vertex"), std::string::npos);
  EXPECT_EQ(first_diagnostic("vertex a\nedge I a c 1\n").substr(0, 5), "2:10:");
  EXPECT_NE(first_diagnostic("vertex a\nvertex b\nedge I a b -1\n").find("negative or zero length"), std::string::npos);
  EXPECT_NE(first_diagnostic("vertex a\nvertex b\nedge I a b 1\nsegment I 0 1/2 -> I:0 I:0\n")
                .find("non-contiguous breakpoints on edge 'I'"),
            std::string::npos);
  const std::string cont = first_diagnostic(fixture("bad-continuity.sys"));
  EXPECT_EQ(cont.substr(0, 4), "4:1:") << cont;
  EXPECT_NE(first_diagnostic("example bogus\n").find("unknown example"), std::string::npos);
  EXPECT_NE(first_diagnostic("example star:3\nvertex a\n").find("cannot be combined"), std::string::npos);
}

TEST(ParseSystem, ExampleReference) {
  const auto r = parse_system("# comment\nexample star:3  # trailing\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.description->example, "star:3");
  EXPECT_EQ(to_system(*r.description).name, "star:3");
}

TEST(ParsePoint, EdgeParameterAndVertexNames) {
  const auto s = build_star_map(3);
  EXPECT_EQ(parse_point(s.space(), "I3_1:1/4"), (TreePoint{1, make_rational(1, 4)}));
  EXPECT_EQ(parse_point(s.space(), "z0"), s.landmark("z0"));
  EXPECT_EQ(parse_point(s.space(), "I3_0:0"), s.landmark("z0"));
  EXPECT_THROW(parse_point(s.space(), "I3_0:3/2"), Error);
  EXPECT_THROW(parse_point(s.space(), "nowhere"), Error);
  EXPECT_THROW(parse_point(s.space(), "X:1/2"), Error);
}
