#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limitlab/classify.hpp"
#include "limitlab/error.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/limits.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/systems.hpp"
#include "limitlab/verdict.hpp"

namespace limitlab {

enum class SuiteStatus { Pass, Fail, Partial, Refused, ExpectedFail, UnexpectedPass, PreconditionUnmet };

inline const char* to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "PASS";
    case SuiteStatus::Fail: return "FAIL";
    case SuiteStatus::Partial: return "PARTIAL";
    case SuiteStatus::Refused: return "REFUSED";
    case SuiteStatus::ExpectedFail: return "EXPECTED-FAIL";
    case SuiteStatus::UnexpectedPass: return "UNEXPECTED-PASS";
    case SuiteStatus::PreconditionUnmet: return "PRECONDITION-UNMET";
  }
  return "?";
}

/// CLI exit code for a suite status.
inline int exit_code(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass:
    case SuiteStatus::ExpectedFail:
    case SuiteStatus::PreconditionUnmet: return 0;
    case SuiteStatus::Fail:
    case SuiteStatus::UnexpectedPass: return 1;
    case SuiteStatus::Refused: return 2;
    case SuiteStatus::Partial: return 3;
  }
  return 1;
}

struct SampleResult {
  TreePoint point;
  Outcome outcome = Outcome::Inconclusive;
  std::string note;
  std::vector<Verdict> verdicts;
};

struct SuiteReport {
  std::string suite;
  std::string system;
  std::string samples_description;
  Rational epsilon;
  std::vector<std::pair<std::string, std::int64_t>> budgets;
  std::vector<SampleResult> samples;
  std::vector<TreePoint> excluded;  // samples within the resolution halo of a periodic point
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  SuiteStatus status = SuiteStatus::Pass;
  std::vector<std::string> notes;

  std::vector<const SampleResult*> failures() const {
    std::vector<const SampleResult*> out;
    for (const auto& s : samples)
      if (s.outcome == Outcome::Fail) out.push_back(&s);
    return out;
  }
};

struct SuiteConfig {
  Rational epsilon = default_epsilon();
  std::size_t depth = kDefaultDepth;
  std::size_t time_budget = kDefaultTimeBudget;
  std::size_t transient = kDefaultTransient;
  std::size_t window = kDefaultWindow;
  std::uint64_t seed = 1;
  std::size_t min_samples = 100;
  std::size_t grid_target = 128;
  std::size_t random_samples = 16;
};

inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{
      "omega-eq-ap",           "omega-iff-alpha",         "salpha-eq-alpha-cap-omega", "salpha-membership",
      "sa-equals-r",           "limits-of-minimal-sets",  "continuity-off-periodic",   "salpha-periodic-structure",
      "strict-inclusion",
  };
  return ids;
}

/// Points x_n -> p along the first edge at p, at distances L/2^n for n = 1..count.
inline std::vector<TreePoint> approach_sequence(const TreeSpace& space, const TreePoint& p_raw, std::size_t count) {
  const TreePoint p = space.canonical(p_raw);
  EdgeId e = p.edge;
  Rational t = p.t, dir = 1;
  if (auto v = space.vertex_at(p)) {
    e = space.incident(*v).front();
    const bool from = space.edge(e).from == *v;
    t = from ? 0 : 1;
    dir = from ? 1 : -1;
  } else if (p.t > make_rational(1, 2)) {
    dir = -1;
  }
  const Rational room = dir > 0 ? 1 - t : t;
  std::vector<TreePoint> out;
  for (std::size_t n = 1; n <= count; ++n) out.push_back(space.point(e, t + dir * room * dyadic(n)));
  return out;
}

/// Per-system state shared by the suites: exact periodic structure, the
/// sample set and memoized limit sets.
class SystemVerifier {
 public:
  SystemVerifier(const ExampleSystem& ex, SuiteConfig config)
      : ex_(&ex), f_(&ex.map), config_(std::move(config)), nonwandering_(ex.map, config_.time_budget) {}

  const ExampleSystem& example() const { return *ex_; }
  const SuiteConfig& config() const { return config_; }
  const Rational& eps() const { return config_.epsilon; }

  const Verdict& monotone() {
    if (!monotone_) monotone_ = check_monotone(*f_);
    return *monotone_;
  }

  const PeriodicPoints& periodic() {
    if (!periodic_) {
      const std::size_t max_period = std::min<std::size_t>(f_->space().edge_count() + 1, 64);
      periodic_ = periodic_points(*f_, max_period);
    }
    return *periodic_;
  }

  std::vector<TreePoint> periodic_orbit_points() {
    std::vector<TreePoint> out;
    for (const auto& o : periodic().orbits) out.insert(out.end(), o.points.begin(), o.points.end());
    return out;
  }

  /// Distance to the exact periodic set found up to the configured period.
  Rational distance_to_periodic(const TreePoint& q) {
    const TreeSpace& space = f_->space();
    std::optional<Rational> best;
    auto consider = [&](const TreePoint& x) {
      Rational d = space.distance(q, x);
      if (!best || d < *best) best = d;
    };
    for (const auto& o : periodic().orbits)
      for (const auto& x : o.points) consider(x);
    for (const auto& iv : periodic().intervals) {
      Rational t;
      if (detail::lies_on_edge(space, q, iv.edge, t) && iv.lo <= t && t <= iv.hi) return 0;
      consider(space.point(iv.edge, iv.lo));
      consider(space.point(iv.edge, iv.hi));
    }
    if (!best) throw Error(ErrorKind::EmptySet, "no periodic points up to the configured period");
    return *best;
  }

  /// Grid at pitch total_length / grid_target, every periodic point, the
  /// example's landmarks and seeded random rationals. Samples with
  /// 0 < d(q, P) <= 4 eps are set aside: at resolution eps they pass the
  /// ball-return test through the periodic point P without being recurrent.
  const std::vector<TreePoint>& samples() {
    if (samples_) return *samples_;
    const TreeSpace& space = f_->space();
    std::vector<TreePoint> pts = SubtreeSet::whole(space).sample(
        space, space.total_length() / static_cast<long>(config_.grid_target));
    auto orbit = periodic_orbit_points();
    pts.insert(pts.end(), orbit.begin(), orbit.end());
    for (const auto& iv : periodic().intervals) pts.push_back(space.point(iv.edge, (iv.lo + iv.hi) / 2));
    for (const auto& [label, p] : ex_->landmarks) pts.push_back(p);
    std::mt19937_64 rng(config_.seed);
    auto random_point = [&] {
      const EdgeId e = static_cast<EdgeId>(rng() % space.edge_count());
      return space.point(e, make_rational(static_cast<long>(1 + rng() % 996), 997));
    };
    for (std::size_t i = 0; i < config_.random_samples; ++i) pts.push_back(random_point());
    std::vector<TreePoint> admitted, excluded;
    auto sort_unique = [](std::vector<TreePoint>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    sort_unique(pts);
    const Rational halo = 4 * eps();
    auto admit = [&](const TreePoint& q) {
      const Rational d = distance_to_periodic(q);
      if (d == 0 || d > halo) admitted.push_back(q);
      else excluded.push_back(q);
    };
    for (const auto& q : pts) admit(q);
    for (std::size_t guard = 0; admitted.size() < config_.min_samples && guard < 100 * config_.min_samples; ++guard)
      admit(random_point());
    sort_unique(admitted);
    sort_unique(excluded);
    samples_ = std::move(admitted);
    excluded_ = std::move(excluded);
    return *samples_;
  }

  const std::vector<TreePoint>& excluded() {
    samples();
    return excluded_;
  }

  std::string samples_description() {
    return std::to_string(samples().size()) + " samples (grid at total length / " +
           std::to_string(config_.grid_target) + ", periodic points, landmarks, " +
           std::to_string(config_.random_samples) + "+ random rationals, seed " + std::to_string(config_.seed) +
           "); " + std::to_string(excluded().size()) + " excluded within 4 eps of a periodic point";
  }

  const Verdict& nonwandering(const TreePoint& p, const Rational& radius) { return nonwandering_.verdict(p, radius); }
  NonwanderingOracle& nonwandering_oracle() { return nonwandering_; }

  const TreeSetApprox& salpha_direct(const TreePoint& p) {
    auto it = salpha_.find(p);
    if (it == salpha_.end()) it = salpha_.emplace(p, special_alpha_limit_direct(*f_, p, eps(), config_.depth)).first;
    return it->second;
  }

  const TreeSetApprox& salpha_via(const TreePoint& p) {
    auto it = salpha_via_.find(p);
    if (it == salpha_via_.end())
      it = salpha_via_.emplace(p, special_alpha_limit_via_theorem(*f_, p, eps(), nonwandering_, config_.depth)).first;
    return it->second;
  }

  const TreeSetApprox& alpha(const TreePoint& p) {
    auto it = alpha_.find(p);
    if (it == alpha_.end()) it = alpha_.emplace(p, alpha_limit(*f_, p, eps(), config_.depth)).first;
    return it->second;
  }

  const TreeSetApprox& omega(const TreePoint& p) {
    auto it = omega_.find(p);
    if (it == omega_.end())
      it = omega_.emplace(p, omega_limit(*f_, p, eps(), config_.transient, config_.window)).first;
    return it->second;
  }

  /// f^depth(X): samples outside it have no infinite negative orbit.
  const CoreSpace& core() {
    if (!core_) core_ = core_space(*f_, config_.depth);
    return *core_;
  }

 private:
  const ExampleSystem* ex_;
  const PwAffineTreeMap* f_;
  SuiteConfig config_;
  NonwanderingOracle nonwandering_;
  std::optional<Verdict> monotone_;
  std::optional<PeriodicPoints> periodic_;
  std::optional<std::vector<TreePoint>> samples_;
  std::vector<TreePoint> excluded_;
  std::optional<CoreSpace> core_;
  std::map<TreePoint, TreeSetApprox> salpha_, salpha_via_, alpha_, omega_;
};

namespace detail {

inline std::optional<Rational> distance_to_approx(const TreeSpace& space, const TreePoint& p, const TreeSetApprox& a) {
  if (a.points.empty()) return std::nullopt;
  return distance_to_set(space, p, a.points.points());
}

/// d_H with the conventions d(empty, empty) = 0 and d(empty, A) = infinity.
inline std::optional<Rational> set_distance(const TreeSpace& space, const TreePointSet& a, const TreePointSet& b) {
  if (a.empty() && b.empty()) return Rational(0);
  if (a.empty() || b.empty()) return std::nullopt;
  return hausdorff_distance(space, a, b);
}

inline std::string show(const std::optional<Rational>& d) { return d ? to_string(*d) : std::string("inf"); }

inline SuiteReport start_report(SystemVerifier& sys, const std::string& suite) {
  SuiteReport r;
  r.suite = suite;
  r.system = sys.example().name;
  r.epsilon = sys.eps();
  const auto& c = sys.config();
  r.budgets = {{"depth", static_cast<std::int64_t>(c.depth)},
               {"time", static_cast<std::int64_t>(c.time_budget)},
               {"transient", static_cast<std::int64_t>(c.transient)},
               {"window", static_cast<std::int64_t>(c.window)},
               {"seed", static_cast<std::int64_t>(c.seed)}};
  return r;
}

/// Refuses non-monotone maps, and maps on non-regular curves unless the
/// suite runs there as a counterexample; returns false when refused.
inline bool require_monotone(SystemVerifier& sys, SuiteReport& r, bool counterexample_run = false) {
  const Verdict& m = sys.monotone();
  if (!m.passed()) {
    r.status = SuiteStatus::Refused;
    r.notes.push_back("map is not monotone: " + m.witness.note);
    return false;
  }
  if (!counterexample_run && !is_regular_curve(sys.example())) {
    r.status = SuiteStatus::Refused;
    r.notes.push_back(sys.example().name + " is not a regular curve");
    return false;
  }
  return true;
}

inline void finish(SystemVerifier& sys, SuiteReport& r, bool theorem_applies = true) {
  r.passed = r.failed = r.inconclusive = 0;
  for (const auto& s : r.samples) {
    if (s.outcome == Outcome::Pass) ++r.passed;
    else if (s.outcome == Outcome::Fail) ++r.failed;
    else ++r.inconclusive;
  }
  if (r.status == SuiteStatus::Refused || r.status == SuiteStatus::PreconditionUnmet) return;
  SuiteStatus raw = r.failed ? SuiteStatus::Fail : r.inconclusive ? SuiteStatus::Partial : SuiteStatus::Pass;
  if (!theorem_applies) {
    r.notes.push_back(sys.example().name + " is not a regular curve; failure is the expected outcome");
    raw = raw == SuiteStatus::Fail ? SuiteStatus::ExpectedFail : SuiteStatus::UnexpectedPass;
  }
  r.status = raw;
}

template <class Check>
SuiteReport per_sample_suite(SystemVerifier& sys, const std::string& suite, Check&& check,
                             bool theorem_applies = true) {
  SuiteReport r = start_report(sys, suite);
  if (!require_monotone(sys, r, !theorem_applies)) return r;
  r.samples_description = sys.samples_description();
  r.excluded = sys.excluded();
  for (const auto& p : sys.samples()) {
    SampleResult s;
    s.point = p;
    try {
      check(p, s);
    } catch (const BudgetExceeded& e) {
      s.outcome = Outcome::Inconclusive;
      s.note = e.what();
    }
    r.samples.push_back(std::move(s));
  }
  finish(sys, r, theorem_applies);
  return r;
}

}  // namespace detail

/// Nonwandering at (eps, T) implies recurrent and almost periodic at 2 eps
/// with doubled budgets. On a non-regular curve this is expected to fail.
inline SuiteReport suite_omega_eq_ap_eq_r(SystemVerifier& sys) {
  const auto& c = sys.config();
  const PwAffineTreeMap& f = sys.example().map;
  return detail::per_sample_suite(
      sys, "omega-eq-ap",
      [&](const TreePoint& p, SampleResult& s) {
        const Verdict& nw = sys.nonwandering(p, sys.eps());
        s.verdicts.push_back(nw);
        if (!nw.passed()) {
          s.outcome = Outcome::Pass;
          s.note = "wandering at eps";
          return;
        }
        Verdict rec = is_recurrent(f, p, 2 * sys.eps(), 2 * c.transient, 2 * c.window);
        Verdict ap = is_almost_periodic(f, p, 2 * sys.eps(), 2 * c.window, 2 * c.time_budget);
        const bool ok = rec.passed() && ap.passed();
        const bool definitive = !rec.budget_relative && !ap.budget_relative;
        s.outcome = ok ? Outcome::Pass : (definitive || !nw.budget_relative) ? Outcome::Fail : Outcome::Inconclusive;
        s.note = std::string("nonwandering; recurrent ") + to_string(rec.outcome) + ", almost periodic " +
                 to_string(ap.outcome);
        s.verdicts.push_back(std::move(rec));
        s.verdicts.push_back(std::move(ap));
      },
      is_regular_curve(sys.example()));
}

namespace detail {

inline void biconditional(SampleResult& s, const Verdict& nw, const std::optional<Rational>& d, const Rational& tol,
                          const std::string& what) {
  const bool near = d && *d <= tol;
  s.verdicts.push_back(nw);
  s.note = std::string("nonwandering ") + to_string(nw.outcome) + ", d(p, " + what + ") = " + show(d);
  if (nw.passed() == near) s.outcome = Outcome::Pass;
  else if (!nw.passed() && nw.budget_relative) s.outcome = Outcome::Inconclusive;
  else s.outcome = Outcome::Fail;
}

}  // namespace detail

/// Nonwandering at eps iff d(p, alpha(p)) <= 2 eps.
inline SuiteReport suite_omega_iff_alpha_membership(SystemVerifier& sys) {
  const TreeSpace& space = sys.example().space();
  return detail::per_sample_suite(sys, "omega-iff-alpha", [&](const TreePoint& p, SampleResult& s) {
    detail::biconditional(s, sys.nonwandering(p, sys.eps()), detail::distance_to_approx(space, p, sys.alpha(p)),
                          2 * sys.eps(), "alpha");
  });
}

/// Nonwandering at eps iff d(p, s-alpha(p)) <= 2 eps.
inline SuiteReport suite_salpha_membership(SystemVerifier& sys) {
  const TreeSpace& space = sys.example().space();
  return detail::per_sample_suite(sys, "salpha-membership", [&](const TreePoint& p, SampleResult& s) {
    detail::biconditional(s, sys.nonwandering(p, sys.eps()),
                          detail::distance_to_approx(space, p, sys.salpha_direct(p)), 2 * sys.eps(), "s-alpha");
  });
}

/// The two s-alpha computations agree within 2 eps on every sample in the
/// core f^depth(X).
inline SuiteReport suite_salpha_eq_alpha_cap_omega(SystemVerifier& sys) {
  const TreeSpace& space = sys.example().space();
  auto r = detail::per_sample_suite(sys, "salpha-eq-alpha-cap-omega", [&](const TreePoint& p, SampleResult& s) {
    if (!sys.core().set.contains(space, p)) {
      s.outcome = Outcome::Pass;
      s.note = "outside f^depth(X): both sides empty";
      return;
    }
    const auto& direct = sys.salpha_direct(p);
    const auto& via = sys.salpha_via(p);
    const auto d = detail::set_distance(space, direct.points, via.points);
    s.outcome = d && *d <= 2 * sys.eps() ? Outcome::Pass : Outcome::Fail;
    s.note = "d_H(direct, alpha cap Omega) = " + detail::show(d) + " (" + std::to_string(direct.points.size()) +
             " vs " + std::to_string(via.points.size()) + " points)";
  });
  return r;
}

/// Union of s-alpha over the samples against the samples passing the
/// recurrence test, two-sided within 2 eps.
inline SuiteReport suite_sa_equals_r(SystemVerifier& sys) {
  SuiteReport r = detail::start_report(sys, "sa-equals-r");
  if (!detail::require_monotone(sys, r)) return r;
  const TreeSpace& space = sys.example().space();
  const PwAffineTreeMap& f = sys.example().map;
  const auto& c = sys.config();
  r.samples_description = sys.samples_description();
  r.excluded = sys.excluded();
  std::vector<TreePoint> sa, rec;
  bool budget_hit = false;
  for (const auto& p : sys.samples()) {
    try {
      const auto& s = sys.salpha_direct(p);
      sa.insert(sa.end(), s.points.begin(), s.points.end());
    } catch (const BudgetExceeded& e) {
      budget_hit = true;
      r.notes.push_back(std::string("s-alpha budget at ") + format_point(space, p) + ": " + e.what());
    }
    if (is_recurrent(f, p, sys.eps(), c.transient, c.window).passed()) rec.push_back(p);
  }
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  const Rational tol = 2 * sys.eps();
  auto check_side = [&](const std::vector<TreePoint>& from, const std::vector<TreePoint>& to, const std::string& what) {
    for (const auto& x : from) {
      SampleResult s;
      s.point = x;
      const std::optional<Rational> d = to.empty() ? std::nullopt : std::optional(distance_to_set(space, x, to));
      s.outcome = d && *d <= tol ? Outcome::Pass : budget_hit ? Outcome::Inconclusive : Outcome::Fail;
      s.note = what + " at distance " + detail::show(d);
      r.samples.push_back(std::move(s));
    }
  };
  check_side(sa, rec, "s-alpha point to the recurrent samples");
  check_side(rec, sa, "recurrent sample to the s-alpha union");
  r.notes.push_back(std::to_string(sa.size()) + " points in the s-alpha union, " + std::to_string(rec.size()) +
                    " recurrent samples");
  detail::finish(sys, r);
  return r;
}

/// For each periodic sample x, every point of s-alpha(x) is within eps of a
/// periodic orbit, or else within eps of O_f(x), where the orbits
/// accumulate. An isolated point in s-alpha(x) forces the first case.
inline SuiteReport suite_salpha_of_periodic_structure(SystemVerifier& sys) {
  SuiteReport r = detail::start_report(sys, "salpha-periodic-structure");
  if (!detail::require_monotone(sys, r)) return r;
  const TreeSpace& space = sys.example().space();
  const PwAffineTreeMap& f = sys.example().map;
  std::vector<TreePoint> periodic_samples = sys.periodic_orbit_points();
  for (const auto& iv : sys.periodic().intervals) periodic_samples.push_back(space.point(iv.edge, (iv.lo + iv.hi) / 2));
  r.samples_description = std::to_string(periodic_samples.size()) + " periodic points";
  for (const auto& x : periodic_samples) {
    SampleResult s;
    s.point = x;
    try {
      const auto& sa = sys.salpha_direct(x);
      const auto orbit = detail::exact_orbit(f, x, 64);
      std::size_t near_periodic = 0, near_orbit = 0, stray = 0;
      for (const auto& y : sa.points) {
        if (sys.distance_to_periodic(y) <= sys.eps()) ++near_periodic;
        else if (!orbit.empty() && distance_to_set(space, y, orbit) <= sys.eps()) ++near_orbit;
        else {
          ++stray;
          s.verdicts.push_back(Verdict{"periodic-structure", format_point(space, y), sys.eps(), {}, Outcome::Fail,
                                       false, Witness{std::nullopt, sys.distance_to_periodic(y), {y}, "stray point"}});
        }
      }
      s.outcome = stray == 0 ? Outcome::Pass : Outcome::Fail;
      s.note = std::to_string(sa.points.size()) + " s-alpha points: " + std::to_string(near_periodic) +
               " on periodic orbits, " + std::to_string(near_orbit) + " accumulating on O(x), " +
               std::to_string(stray) + " stray";
    } catch (const BudgetExceeded& e) {
      s.outcome = Outcome::Inconclusive;
      s.note = e.what();
    }
    r.samples.push_back(std::move(s));
  }
  detail::finish(sys, r);
  return r;
}

/// Tail of a sequence of exact minimal sets is Cauchy within eps and its
/// limit (the given candidate, or the last set) passes is_minimal.
inline SuiteReport suite_limits_of_minimal_sets(SystemVerifier& sys, const std::vector<std::vector<TreePoint>>& sequence,
                                                const std::optional<std::vector<TreePoint>>& candidate) {
  SuiteReport r = detail::start_report(sys, "limits-of-minimal-sets");
  if (!detail::require_monotone(sys, r)) return r;
  const TreeSpace& space = sys.example().space();
  const PwAffineTreeMap& f = sys.example().map;
  r.samples_description = std::to_string(sequence.size()) + " minimal sets";
  if (sequence.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two minimal sets");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    SampleResult s;
    s.point = sequence[i].front();
    Verdict m = is_minimal(f, sequence[i], sys.eps(), sys.config().time_budget);
    s.outcome = m.outcome;
    s.note = "M_" + std::to_string(i + 1) + ": " + m.witness.note;
    if (candidate) s.note += "; d_H(M, limit) = " + to_string(hausdorff_distance(space, sequence[i], *candidate));
    s.verdicts.push_back(std::move(m));
    r.samples.push_back(std::move(s));
  }
  const std::size_t tail = std::max<std::size_t>(2, (sequence.size() + 3) / 4);
  Rational worst = 0;
  for (std::size_t i = sequence.size() - tail; i < sequence.size(); ++i)
    for (std::size_t j = i + 1; j < sequence.size(); ++j)
      worst = max(worst, hausdorff_distance(space, sequence[i], sequence[j]));
  r.notes.push_back("tail of " + std::to_string(tail) + " sets has diameter " + to_string(worst));
  if (worst > sys.eps()) {
    r.status = SuiteStatus::PreconditionUnmet;
    r.notes.push_back("sequence is not Cauchy within eps at the tail; no verdict on the limit");
    detail::finish(sys, r);
    return r;
  }
  const std::vector<TreePoint> limit = candidate ? *candidate : sequence.back();
  SampleResult s;
  s.point = limit.front();
  const Rational to_limit = hausdorff_distance(space, sequence.back(), limit);
  Verdict m = is_minimal(f, limit, sys.eps(), sys.config().time_budget);
  s.outcome = m.passed() && to_limit <= sys.eps() ? Outcome::Pass : Outcome::Fail;
  s.note = "limit: " + m.witness.note + "; d_H(last, limit) = " + to_string(to_limit);
  s.verdicts.push_back(std::move(m));
  r.samples.push_back(std::move(s));
  // non-minimal members only matter through the limit
  for (std::size_t i = 0; i + 1 < r.samples.size(); ++i)
    if (r.samples[i].outcome != Outcome::Pass) r.notes.push_back(r.samples[i].note);
  detail::finish(sys, r);
  return r;
}

/// d_H(L(x_n), L(p)) <= 2 eps along the tail of x_n -> p for L in omega,
/// alpha, s-alpha. At a periodic p a discontinuity is allowed and reported.
inline SuiteReport suite_continuity_off_periodic(SystemVerifier& sys, const TreePoint& p,
                                                 const std::vector<TreePoint>& approach) {
  SuiteReport r = detail::start_report(sys, "continuity-off-periodic");
  if (!detail::require_monotone(sys, r)) return r;
  const TreeSpace& space = sys.example().space();
  const bool periodic = minimal_period(sys.example().map, p, 64).has_value();
  r.samples_description = std::to_string(approach.size()) + " points approaching " + format_point(space, p);
  if (periodic) r.notes.push_back(format_point(space, p) + " is periodic: discontinuity there is allowed");
  const std::size_t tail_from = approach.size() - approach.size() / 3;
  const std::pair<const char*, const TreeSetApprox& (SystemVerifier::*)(const TreePoint&)> kinds[] = {
      {"omega", &SystemVerifier::omega}, {"alpha", &SystemVerifier::alpha}, {"s-alpha", &SystemVerifier::salpha_direct}};
  for (std::size_t i = 0; i < approach.size(); ++i) {
    SampleResult s;
    s.point = approach[i];
    s.outcome = Outcome::Pass;
    try {
      for (const auto& [name, get] : kinds) {
        const auto d = detail::set_distance(space, (sys.*get)(approach[i]).points, (sys.*get)(p).points);
        s.note += std::string(s.note.empty() ? "" : ", ") + name + " " + detail::show(d);
        if (i >= tail_from && !(d && *d <= 2 * sys.eps())) {
          if (periodic) s.note += " (allowed at a periodic point)";
          else s.outcome = Outcome::Fail;
        }
      }
    } catch (const BudgetExceeded& e) {
      s.outcome = Outcome::Inconclusive;
      s.note = e.what();
    }
    r.samples.push_back(std::move(s));
  }
  detail::finish(sys, r);
  return r;
}

/// branch-alpha(p) under the stay policy lies within 2 eps of alpha(p);
/// strictness (an alpha point farther than 2 eps from it) is reported.
inline SuiteReport suite_strict_inclusion_branch_vs_alpha(SystemVerifier& sys, const TreePoint& p) {
  SuiteReport r = detail::start_report(sys, "strict-inclusion");
  if (!detail::require_monotone(sys, r)) return r;
  const TreeSpace& space = sys.example().space();
  r.samples_description = "p = " + format_point(space, p);
  SampleResult s;
  s.point = p;
  try {
    const auto branch = branch_alpha_limit(sys.example().map, p, BranchChoice{}, sys.eps(), sys.config().depth);
    const auto& alpha = sys.alpha(p);
    const Rational tol = 2 * sys.eps();
    const Rational inside = directed_hausdorff(space, branch.points.points(), alpha.points.points());
    const Rational beyond = directed_hausdorff(space, alpha.points.points(), branch.points.points());
    s.outcome = inside <= tol ? Outcome::Pass : Outcome::Fail;
    s.note = "branch within " + to_string(inside) + " of alpha; alpha reaches " + to_string(beyond) +
             " beyond branch: " + (beyond > tol ? "strict" : "equal at resolution");
    r.notes.push_back(beyond > tol ? "inclusion is strict" : "inclusion is an equality at resolution");
  } catch (const Error& e) {
    s.outcome = e.kind() == ErrorKind::PolicyDeadEnd ? Outcome::Fail : Outcome::Inconclusive;
    s.note = e.what();
  }
  r.samples.push_back(std::move(s));
  detail::finish(sys, r);
  return r;
}

/// Runs a suite by id with the defaults a command line can supply.
inline SuiteReport run_suite(SystemVerifier& sys, const std::string& id, const std::optional<TreePoint>& point) {
  const ExampleSystem& ex = sys.example();
  const TreePoint p = point ? *point : ex.landmarks.front().second;
  if (id == "omega-eq-ap") return suite_omega_eq_ap_eq_r(sys);
  if (id == "omega-iff-alpha") return suite_omega_iff_alpha_membership(sys);
  if (id == "salpha-eq-alpha-cap-omega") return suite_salpha_eq_alpha_cap_omega(sys);
  if (id == "salpha-membership") return suite_salpha_membership(sys);
  if (id == "sa-equals-r") return suite_sa_equals_r(sys);
  if (id == "salpha-periodic-structure") return suite_salpha_of_periodic_structure(sys);
  if (id == "continuity-off-periodic") return suite_continuity_off_periodic(sys, p, approach_sequence(ex.space(), p, 12));
  if (id == "strict-inclusion") return suite_strict_inclusion_branch_vs_alpha(sys, p);
  if (id == "limits-of-minimal-sets") {
    std::vector<std::vector<TreePoint>> seq;
    std::optional<std::vector<TreePoint>> limit;
    if (ex.name.rfind("inf-star:", 0) == 0) {
      const std::size_t n_max = std::stoul(ex.name.substr(9));
      for (std::size_t n = 1; n <= n_max; ++n) seq.push_back(infinite_star_orbit(ex, n));
      limit = std::vector<TreePoint>{ex.landmark("z0")};
    } else {
      for (const auto& o : sys.periodic().orbits) seq.push_back(o.points);
      if (seq.size() == 1) seq.push_back(seq.front());
    }
    return suite_limits_of_minimal_sets(sys, seq, limit);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + id + "'");
}

}  // namespace limitlab
