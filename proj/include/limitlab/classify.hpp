#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/limits.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/systems.hpp"
#include "limitlab/verdict.hpp"

namespace limitlab {

inline constexpr std::size_t kDefaultTimeBudget = 4096;

struct PeriodicOrbit {
  TreePoint base;  // smallest point of the orbit
  std::size_t period = 0;
  std::vector<TreePoint> points;  // base, f(base), ...
};

/// A closed segment of an edge on which f^period is the identity.
struct PeriodicInterval {
  EdgeId edge = 0;
  Rational lo;
  Rational hi;
  std::size_t period = 0;
};

struct PeriodicPoints {
  std::vector<PeriodicOrbit> orbits;
  std::vector<PeriodicInterval> intervals;

  std::size_t count_with_period(std::size_t n) const {
    return static_cast<std::size_t>(
        std::count_if(orbits.begin(), orbits.end(), [&](const PeriodicOrbit& o) { return o.period == n; }));
  }
};

/// Minimal period of p if it is at most max_period.
inline std::optional<std::size_t> minimal_period(const PwAffineTreeMap& f, const TreePoint& p,
                                                 std::size_t max_period) {
  const TreePoint start = f.space().canonical(p);
  TreePoint x = start;
  for (std::size_t n = 1; n <= max_period; ++n) {
    x = f.evaluate(x);
    if (x == start) return n;
  }
  return std::nullopt;
}

/// All periodic points of period <= max_period, solving s = a + b s on every
/// affine piece of f^n that maps an edge into itself. Vertices are checked
/// directly since a piece can fix a vertex while changing edge.
inline PeriodicPoints periodic_points(const PwAffineTreeMap& f, std::size_t max_period,
                                      std::size_t piece_cap = 200000) {
  if (max_period < 1) throw Error(ErrorKind::InvalidArgument, "max_period must be at least 1");
  const TreeSpace& space = f.space();
  PeriodicPoints out;
  std::vector<TreePoint> candidates;
  for (VertexId v = 0; v < space.vertex_count(); ++v) candidates.push_back(space.vertex_point(v));
  for (std::size_t n = 1; n <= max_period; ++n) {
    for (const auto& piece : power_pieces(f, n, piece_cap)) {
      if (piece.target != piece.edge) continue;
      if (piece.slope == 1) {
        if (piece.offset != 0) continue;
        const TreePoint mid = space.canonical(TreePoint{piece.edge, (piece.lo + piece.hi) / 2});
        if (minimal_period(f, mid, n) == n) out.intervals.push_back(PeriodicInterval{piece.edge, piece.lo, piece.hi, n});
        continue;
      }
      const Rational s = piece.offset / (1 - piece.slope);
      if (piece.lo <= s && s <= piece.hi) candidates.push_back(space.canonical(TreePoint{piece.edge, s}));
    }
  }
  // merge touching intervals of the same period
  std::sort(out.intervals.begin(), out.intervals.end(), [](const PeriodicInterval& a, const PeriodicInterval& b) {
    return std::tie(a.period, a.edge, a.lo) < std::tie(b.period, b.edge, b.lo);
  });
  std::vector<PeriodicInterval> merged;
  for (auto& iv : out.intervals) {
    if (!merged.empty() && merged.back().period == iv.period && merged.back().edge == iv.edge &&
        merged.back().hi >= iv.lo) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(std::move(iv));
    }
  }
  out.intervals = std::move(merged);
  auto in_interval = [&](const TreePoint& p) {
    for (const auto& iv : out.intervals) {
      Rational t;
      if (detail::lies_on_edge(space, p, iv.edge, t) && iv.lo <= t && t <= iv.hi) return true;
    }
    return false;
  };
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::unordered_set<TreePoint, TreePointHash> placed;
  for (const auto& c : candidates) {
    if (placed.count(c) || in_interval(c)) continue;
    const auto q = minimal_period(f, c, max_period);
    if (!q) continue;
    PeriodicOrbit orbit;
    orbit.period = *q;
    TreePoint x = c;
    for (std::size_t i = 0; i < *q; ++i) {
      orbit.points.push_back(x);
      placed.insert(x);
      x = f.evaluate(x);
    }
    const auto smallest = std::min_element(orbit.points.begin(), orbit.points.end());
    std::rotate(orbit.points.begin(), smallest, orbit.points.end());
    orbit.base = orbit.points.front();
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    return a.period != b.period ? a.period < b.period : a.base < b.base;
  });
  return out;
}

/// Ball images under f^n, exact. PASS at the first n with f^n(U) meeting U.
/// An image contained in the previous one, or equal to any earlier one,
/// means no later image can reach U either, so that FAIL is definitive.
inline Verdict is_nonwandering(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                               std::size_t time_budget = kDefaultTimeBudget) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const TreeSpace& space = f.space();
  Verdict v;
  v.query = "nonwandering";
  v.subject = format_point(space, p);
  v.epsilon = eps;
  v.budgets = {{"time", static_cast<std::int64_t>(time_budget)}};
  const SubtreeSet u = ball(space, p, eps).set;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;  // hash -> times
  std::vector<SubtreeSet> history{u};
  seen[u.hash()].push_back(0);
  SubtreeSet image = u;
  for (std::size_t n = 1; n <= time_budget; ++n) {
    SubtreeSet next = f.image(image);
    if (next.intersects(u)) {
      v.outcome = Outcome::Pass;
      v.witness.time = static_cast<std::int64_t>(n);
      v.witness.note = "f^" + std::to_string(n) + "(U) meets U";
      return v;
    }
    const bool nested = next.subset_of(image);
    bool repeated = false;
    auto& bucket = seen[next.hash()];
    for (std::size_t k : bucket)
      if (history[k] == next) repeated = true;
    if (nested || repeated) {
      v.outcome = Outcome::Fail;
      v.witness.time = static_cast<std::int64_t>(n);
      v.witness.note = nested ? "f^" + std::to_string(n) + "(U) lies inside f^" + std::to_string(n - 1) +
                                    "(U); no image meets U"
                              : "images of U cycle from step " + std::to_string(n) + " without meeting U";
      for (const auto& c : next.components(space)) {
        auto pts = c.extreme_points(space);
        v.witness.points.insert(v.witness.points.end(), pts.begin(), pts.end());
      }
      return v;
    }
    bucket.push_back(history.size());
    history.push_back(next);
    image = std::move(next);
  }
  v.outcome = Outcome::Fail;
  v.budget_relative = true;
  v.witness.time = static_cast<std::int64_t>(time_budget);
  v.witness.note = "no return within " + std::to_string(time_budget) + " iterates";
  return v;
}

/// Memoized is_nonwandering, keyed by (point, radius).
class NonwanderingOracle {
 public:
  NonwanderingOracle(const PwAffineTreeMap& f, std::size_t time_budget = kDefaultTimeBudget)
      : f_(&f), budget_(time_budget) {}

  const Verdict& verdict(const TreePoint& p, const Rational& radius) {
    const TreePoint c = f_->space().canonical(p);
    std::size_t key = TreePointHash{}(c);
    hash_combine(key, hash_rational(radius));
    auto& bucket = cache_[key];
    for (const auto& [q, r, v] : bucket)
      if (q == c && r == radius) return v;
    bucket.emplace_back(c, radius, is_nonwandering(*f_, c, radius, budget_));
    return std::get<2>(bucket.back());
  }

  bool operator()(const TreePoint& p, const Rational& radius) { return verdict(p, radius).passed(); }

  std::size_t time_budget() const { return budget_; }

 private:
  const PwAffineTreeMap* f_;
  std::size_t budget_;
  std::unordered_map<std::size_t, std::vector<std::tuple<TreePoint, Rational, Verdict>>> cache_;
};

/// PASS iff p is within eps of the omega-limit approximation.
inline Verdict is_recurrent(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                            std::size_t transient = kDefaultTransient, std::size_t window = kDefaultWindow) {
  const TreeSpace& space = f.space();
  const auto omega = omega_limit(f, p, eps, transient, window);
  Verdict v;
  v.query = "recurrent";
  v.subject = format_point(space, p);
  v.epsilon = eps;
  v.budgets = omega.budgets;
  const Rational d = distance_to_set(space, p, omega.points.points());
  v.outcome = d <= eps ? Outcome::Pass : Outcome::Fail;
  v.budget_relative = !omega.exact;
  v.witness.distance = d;
  // closest return, as the return-time witness
  TreePoint x = space.canonical(p);
  std::optional<Rational> best;
  for (std::size_t n = 1; n <= transient + window; ++n) {
    x = f.evaluate(x);
    Rational dn = space.distance(x, p);
    if (!best || dn < *best) {
      best = dn;
      v.witness.time = static_cast<std::int64_t>(n);
      if (dn == 0) break;
    }
  }
  v.witness.points = omega.points.points();
  v.witness.note = std::string(omega.exact ? "exact" : "approximate") + " omega-limit at distance " + to_string(d);
  return v;
}

/// PASS iff some N <= n_budget makes every window f^{k..k+N}(p), k <= k_budget,
/// meet the eps-ball at p. A periodic point of period q has N = q - 1.
inline Verdict is_almost_periodic(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                                  std::size_t n_budget = kDefaultWindow, std::size_t k_budget = kDefaultTimeBudget) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const TreeSpace& space = f.space();
  Verdict v;
  v.query = "almost-periodic";
  v.subject = format_point(space, p);
  v.epsilon = eps;
  v.budgets = {{"N", static_cast<std::int64_t>(n_budget)}, {"K", static_cast<std::int64_t>(k_budget)}};
  if (auto q = minimal_period(f, p, n_budget + 1)) {
    v.outcome = Outcome::Pass;
    v.witness.time = static_cast<std::int64_t>(*q - 1);
    v.witness.note = "periodic with period " + std::to_string(*q);
    return v;
  }
  const std::size_t steps = k_budget + n_budget + 1;
  std::vector<bool> hit(steps, false);
  std::vector<TreePoint> orbit;
  orbit.reserve(steps);
  TreePoint x = space.canonical(p);
  for (std::size_t i = 0; i < steps; ++i) {
    hit[i] = space.distance(x, p) <= eps;
    orbit.push_back(x);
    x = f.evaluate(x);
  }
  std::size_t gap = 0, worst_k = 0;
  std::size_t next = steps;
  std::vector<std::size_t> next_hit(steps + 1, steps);
  for (std::size_t i = steps; i-- > 0;) next_hit[i] = hit[i] ? i : next_hit[i + 1];
  for (std::size_t k = 0; k <= k_budget; ++k) {
    next = next_hit[k];
    const std::size_t g = next == steps ? steps : next - k;
    if (g > gap) { gap = g; worst_k = k; }
  }
  if (gap <= n_budget) {
    v.outcome = Outcome::Pass;
    v.budget_relative = true;
    v.witness.time = static_cast<std::int64_t>(gap);
    v.witness.note = "every window of length " + std::to_string(gap + 1) + " up to k = " + std::to_string(k_budget) +
                     " meets the ball";
    return v;
  }
  v.outcome = Outcome::Fail;
  const auto omega = omega_limit(f, p, eps);
  const Rational d = distance_to_set(space, p, omega.points.points());
  v.budget_relative = !(omega.exact && d > eps);
  v.witness.time = static_cast<std::int64_t>(worst_k);
  v.witness.distance = d;
  v.witness.points = {orbit[worst_k]};
  v.witness.note = v.budget_relative ? "window starting at k = " + std::to_string(worst_k) + " misses the ball"
                                     : "orbit converges to a limit set at distance " + to_string(d);
  return v;
}

/// Finite surrogate of minimality: the orbit of every s in S comes within
/// eps of every point of S within time_budget steps.
inline Verdict is_minimal(const PwAffineTreeMap& f, std::span<const TreePoint> set, const Rational& eps,
                          std::size_t time_budget = kDefaultTimeBudget) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "is_minimal of an empty set");
  const TreeSpace& space = f.space();
  Verdict v;
  v.query = "minimal";
  v.subject = std::to_string(set.size()) + " points";
  v.epsilon = eps;
  v.budgets = {{"time", static_cast<std::int64_t>(time_budget)}};
  std::size_t longest = 0;
  for (const auto& s : set) {
    std::vector<bool> visited(set.size(), false);
    std::size_t remaining = set.size();
    TreePoint x = space.canonical(s);
    std::size_t n = 0;
    for (; n <= time_budget && remaining > 0; ++n) {
      for (std::size_t i = 0; i < set.size(); ++i)
        if (!visited[i] && space.distance(x, set[i]) <= eps) {
          visited[i] = true;
          --remaining;
        }
      x = f.evaluate(x);
    }
    if (remaining > 0) {
      v.outcome = Outcome::Fail;
      v.budget_relative = true;
      const std::size_t missed = static_cast<std::size_t>(std::find(visited.begin(), visited.end(), false) - visited.begin());
      v.witness.points = {s, set[missed]};
      v.witness.time = static_cast<std::int64_t>(time_budget);
      v.witness.note = "orbit of " + format_point(space, s) + " never comes within epsilon of " +
                       format_point(space, set[missed]);
      return v;
    }
    longest = std::max(longest, n);
  }
  v.outcome = Outcome::Pass;
  v.witness.time = static_cast<std::int64_t>(longest);
  v.witness.note = "every orbit visits every point within " + std::to_string(longest) + " steps";
  return v;
}

/// Grid points whose omega-limit approximation is within eps of `target`.
inline std::vector<TreePoint> basin(const PwAffineTreeMap& f, std::span<const TreePoint> target,
                                   std::span<const TreePoint> grid, const Rational& eps) {
  std::vector<TreePoint> out;
  for (const auto& p : grid) {
    const auto omega = omega_limit(f, p, eps);
    if (hausdorff_distance(f.space(), omega.points.points(), target) <= eps) out.push_back(p);
  }
  return out;
}

/// Grid at pitch `pitch`; the default is the shortest edge over 64.
inline std::vector<TreePoint> sample_grid(const TreeSpace& space, std::optional<Rational> pitch = std::nullopt) {
  const Rational step = pitch ? *pitch : space.shortest_edge() / 64;
  return SubtreeSet::whole(space).sample(space, step);
}

/// PASS iff some point of f(A \ F) is within eps of F.
inline Verdict check_weak_incompressibility(const PwAffineTreeMap& f, std::span<const TreePoint> a,
                                            std::span<const TreePoint> sub, const Rational& eps) {
  const TreeSpace& space = f.space();
  if (sub.empty()) throw Error(ErrorKind::InvalidArgument, "F must be nonempty");
  std::vector<TreePoint> rest;
  for (const auto& x : a) {
    const bool in_f = std::any_of(sub.begin(), sub.end(), [&](const TreePoint& y) { return space.same_point(x, y); });
    if (!in_f) rest.push_back(x);
  }
  if (rest.empty()) throw Error(ErrorKind::InvalidArgument, "F must be a proper subset of A");
  Verdict v;
  v.query = "weak-incompressibility";
  v.subject = std::to_string(a.size()) + " points";
  v.epsilon = eps;
  std::optional<Rational> best;
  for (const auto& x : rest) {
    const TreePoint y = f.evaluate(x);
    const Rational d = distance_to_set(space, y, sub);
    if (!best || d < *best) {
      best = d;
      v.witness.points = {x, y};
    }
  }
  v.witness.distance = *best;
  v.outcome = *best <= eps ? Outcome::Pass : Outcome::Fail;
  v.witness.note = "closest image of A \\ F lies at distance " + to_string(*best) + " from F";
  return v;
}

}  // namespace limitlab
