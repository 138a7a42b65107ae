#include <gtest/gtest.h>

#include "limitlab/verify.hpp"
#include "support.hpp"

using namespace limitlab;

namespace {

bool has_note(const SuiteReport& r, const std::string& text) {
  for (const auto& n : r.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

const std::vector<std::string> kSampledSuites{"omega-eq-ap", "omega-iff-alpha", "salpha-eq-alpha-cap-omega",
                                              "salpha-membership", "sa-equals-r", "salpha-periodic-structure"};

}  // namespace

TEST(SuiteStatus, ExitCodes) {
  EXPECT_EQ(exit_code(SuiteStatus::Pass), 0);
  EXPECT_EQ(exit_code(SuiteStatus::ExpectedFail), 0);
  EXPECT_EQ(exit_code(SuiteStatus::PreconditionUnmet), 0);
  EXPECT_EQ(exit_code(SuiteStatus::Fail), 1);
  EXPECT_EQ(exit_code(SuiteStatus::UnexpectedPass), 1);
  EXPECT_EQ(exit_code(SuiteStatus::Refused), 2);
  EXPECT_EQ(exit_code(SuiteStatus::Partial), 3);
  EXPECT_STREQ(to_string(SuiteStatus::ExpectedFail), "EXPECTED-FAIL");
}

TEST(ApproachSequence, HalvesTheDistance) {
  const auto s = build_star_map(3);
  const TreePoint p{1, make_rational(1, 3)};
  const auto seq = approach_sequence(s.space(), p, 10);
  ASSERT_EQ(seq.size(), 10u);
  for (std::size_t i = 1; i < seq.size(); ++i)
    EXPECT_EQ(s.space().distance(seq[i], p) * 2, s.space().distance(seq[i - 1], p));
  const auto at_center = approach_sequence(s.space(), s.landmark("z0"), 5);
  EXPECT_EQ(s.space().distance(at_center.back(), s.landmark("z0")), dyadic(5));
}

TEST(SystemVerifier, SamplesRespectTheHalo) {
  for (const char* name : {"tent-tail", "star:3", "random:3"}) {
    const auto ex = build_example(name);
    SystemVerifier sys(ex, SuiteConfig{});
    const auto& samples = sys.samples();
    EXPECT_GE(samples.size(), 100u) << name;
    const Rational halo = 4 * sys.eps();
    for (const auto& q : samples) {
      const Rational d = sys.distance_to_periodic(q);
      EXPECT_TRUE(d == 0 || d > halo) << name << " " << format_point(ex.space(), q);
    }
    for (const auto& q : sys.excluded()) {
      const Rational d = sys.distance_to_periodic(q);
      EXPECT_TRUE(d > 0 && d <= halo) << name << " " << format_point(ex.space(), q);
    }
    for (const auto& o : sys.periodic().orbits)
      for (const auto& q : o.points) EXPECT_TRUE(std::binary_search(samples.begin(), samples.end(), q));
  }
}

TEST(Suites, PassOnTentTailAndStar) {
  for (const char* name : {"tent-tail", "star:3"}) {
    const auto ex = build_example(name);
    SystemVerifier sys(ex, SuiteConfig{});
    for (const auto& id : kSampledSuites) {
      const SuiteReport r = run_suite(sys, id, std::nullopt);
      EXPECT_EQ(r.status, SuiteStatus::Pass) << name << " " << id;
      EXPECT_EQ(r.failed, 0u) << name << " " << id;
      if (id != "sa-equals-r" && id != "salpha-periodic-structure") {
        EXPECT_GE(r.samples.size(), 100u) << name << " " << id;
      }
    }
    EXPECT_GE(sys.samples().size(), 100u);
  }
}

TEST(Suites, RefuseNonMonotoneMaps) {
  const auto t = build_full_tent();
  SystemVerifier sys(t, SuiteConfig{});
  for (const auto& id : suite_ids()) {
    const SuiteReport r = run_suite(sys, id, std::nullopt);
    EXPECT_EQ(r.status, SuiteStatus::Refused) << id;
    EXPECT_TRUE(r.samples.empty()) << id;
  }
}

TEST(Suites, DendroidIsTheExpectedCounterexample) {
  const auto d = build_dendroid_example(8, 12);
  SuiteConfig config;
  config.epsilon = suggested_epsilon(d);
  SystemVerifier sys(d, config);
  const SuiteReport r = run_suite(sys, "omega-eq-ap", std::nullopt);
  EXPECT_EQ(r.status, SuiteStatus::ExpectedFail);
  bool t1 = false;
  for (const auto* f : r.failures()) t1 = t1 || f->point == d.landmark("T1");
  EXPECT_TRUE(t1);
  for (const char* id : {"omega-iff-alpha", "salpha-eq-alpha-cap-omega", "sa-equals-r"})
    EXPECT_EQ(run_suite(sys, id, std::nullopt).status, SuiteStatus::Refused) << id;
}

TEST(Suites, MinimalSetsOfTheInfiniteStar) {
  const auto inf = build_infinite_star(10);
  SuiteConfig config;
  config.epsilon = make_rational(1, 4);
  SystemVerifier sys(inf, config);
  const SuiteReport r = run_suite(sys, "limits-of-minimal-sets", std::nullopt);
  EXPECT_EQ(r.status, SuiteStatus::Pass);
  ASSERT_EQ(r.samples.size(), 11u);
  EXPECT_TRUE(has_note(r, "diameter 17/72"));

  SystemVerifier fine(inf, SuiteConfig{});
  EXPECT_EQ(run_suite(fine, "limits-of-minimal-sets", std::nullopt).status, SuiteStatus::PreconditionUnmet);
}

TEST(Suites, StrictInclusion) {
  const auto g = build_tent_tail();
  SystemVerifier sys(g, SuiteConfig{});
  const SuiteReport r = run_suite(sys, "strict-inclusion", TreePoint{0, 0});
  EXPECT_EQ(r.status, SuiteStatus::Pass);
  EXPECT_TRUE(has_note(r, "strict"));

  const auto id = build_identity_star(3);
  SystemVerifier fixed(id, SuiteConfig{});
  const SuiteReport e = run_suite(fixed, "strict-inclusion", std::nullopt);
  EXPECT_EQ(e.status, SuiteStatus::Pass);
  EXPECT_TRUE(has_note(e, "equality"));
}

TEST(Suites, ContinuityOffPeriodic) {
  const auto g = build_tent_tail();
  SystemVerifier sys(g, SuiteConfig{});
  EXPECT_EQ(run_suite(sys, "continuity-off-periodic", TreePoint{0, make_rational(3, 4)}).status, SuiteStatus::Pass);
  const SuiteReport at_zero = run_suite(sys, "continuity-off-periodic", TreePoint{0, 0});
  EXPECT_EQ(at_zero.status, SuiteStatus::Pass);
  EXPECT_TRUE(has_note(at_zero, "is periodic"));
}

TEST(Suites, Deterministic) {
  const auto ex = build_example("random:5");
  SystemVerifier a(ex, SuiteConfig{}), b(ex, SuiteConfig{});
  for (const auto& id : kSampledSuites) {
    const SuiteReport ra = run_suite(a, id, std::nullopt), rb = run_suite(b, id, std::nullopt);
    ASSERT_EQ(ra.samples.size(), rb.samples.size());
    for (std::size_t i = 0; i < ra.samples.size(); ++i) {
      EXPECT_EQ(ra.samples[i].point, rb.samples[i].point);
      EXPECT_EQ(ra.samples[i].note, rb.samples[i].note);
    }
    EXPECT_EQ(ra.notes, rb.notes);
  }
}

TEST(Suites, UnknownIdThrows) {
  const auto g = build_tent_tail();
  SystemVerifier sys(g, SuiteConfig{});
  EXPECT_THROW(run_suite(sys, "nope", std::nullopt), Error);
}
