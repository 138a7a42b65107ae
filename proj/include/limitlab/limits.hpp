#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/symbolic.hpp"
#include "limitlab/systems.hpp"

namespace limitlab {

enum class LimitKind { Omega, Alpha, Branch, SpecialAlpha, SpecialAlphaTheorem };

inline const char* to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Omega: return "omega";
    case LimitKind::Alpha: return "alpha";
    case LimitKind::Branch: return "branch";
    case LimitKind::SpecialAlpha: return "salpha";
    case LimitKind::SpecialAlphaTheorem: return "salpha-theorem";
  }
  return "?";
}

inline constexpr std::size_t kDefaultDepth = 64;
inline constexpr std::size_t kDefaultTransient = 256;
inline constexpr std::size_t kDefaultWindow = 256;
inline constexpr std::size_t kDefaultBranchBudget = 20000;
inline Rational default_epsilon() { return dyadic(10); }

/// Finite stand-in for a limit set. `exact` means `points` is the limit set
/// itself; otherwise every limit point is within `epsilon` of `points` at
/// the recorded budgets.
template <class Point>
struct SetApprox {
  LimitKind kind = LimitKind::Omega;
  FiniteSet<Point> points;
  Rational epsilon;
  std::vector<std::pair<std::string, std::int64_t>> budgets;
  bool converged = false;
  bool exact = false;
  std::string note;
  std::vector<Point> negative_orbit;  // branch limits only

  bool empty() const { return points.empty(); }
};

using TreeSetApprox = SetApprox<TreePoint>;
using SymbolicSetApprox = SetApprox<SymbolicPoint>;

namespace detail {

inline std::int64_t as_budget(std::size_t v) { return static_cast<std::int64_t>(v); }

/// Greedy net: keeps a point when it is farther than `radius` from every
/// point kept so far.
inline std::vector<TreePoint> greedy_net(const TreeSpace& space, std::span<const TreePoint> pts, const Rational& radius) {
  std::vector<TreePoint> kept;
  for (const auto& p : pts) {
    bool near = false;
    for (const auto& q : kept)
      if (space.distance(p, q) <= radius) { near = true; break; }
    if (!near) kept.push_back(p);
  }
  return kept;
}

/// [lo, hi] on `edge`, parameters possibly reversed.
struct Segment {
  EdgeId edge;
  Rational a;
  Rational b;
};

/// Pushes a segment through f once, provided f is affine on it.
inline std::optional<Segment> affine_step(const PwAffineTreeMap& f, const Segment& s) {
  const Rational& lo = s.a < s.b ? s.a : s.b;
  const Rational& hi = s.a < s.b ? s.b : s.a;
  for (const auto& piece : f.pieces_on(s.edge))
    if (piece.lo <= lo && hi <= piece.hi) return Segment{piece.target, piece.apply(s.a), piece.apply(s.b)};
  return std::nullopt;
}

inline std::vector<TreePoint> exact_orbit(const PwAffineTreeMap& f, const TreePoint& start, std::size_t max_period) {
  std::vector<TreePoint> orbit{f.space().canonical(start)};
  for (std::size_t i = 0; i < max_period; ++i) {
    TreePoint next = f.evaluate(orbit.back());
    if (next == orbit.front()) return orbit;
    orbit.push_back(std::move(next));
  }
  return {};
}

}  // namespace detail

/// Limit of an orbit tail that converges geometrically to a periodic orbit.
/// `seq` is forward (f(seq[i]) = seq[i+1]) or backward (f(seq[i+1]) =
/// seq[i]). For a stride q the last four points of one residue class must lie
/// on one edge in exact geometric progression with ratio |r| < 1; the limit
/// L is accepted only when f^q(L) = L and f^q is affine on the segment from
/// the tail to L, which makes convergence exact rather than numerical.
inline std::optional<std::vector<TreePoint>> geometric_tail_limit(const PwAffineTreeMap& f,
                                                                  std::span<const TreePoint> seq, bool backward,
                                                                  std::size_t max_stride = 16) {
  const TreeSpace& space = f.space();
  const std::size_t n = seq.size();
  for (std::size_t q = 1; q <= max_stride && 3 * q + 1 <= n; ++q) {
    const TreePoint* pts[4];
    for (int i = 0; i < 4; ++i) pts[i] = &seq[n - 1 - static_cast<std::size_t>(3 - i) * q];
    bool usable = true;
    for (int i = 0; i < 4; ++i)
      if (pts[i]->edge != pts[0]->edge || space.vertex_at(*pts[i])) usable = false;
    if (!usable) continue;
    const Rational d1 = pts[1]->t - pts[0]->t, d2 = pts[2]->t - pts[1]->t, d3 = pts[3]->t - pts[2]->t;
    if (d1 == 0 || d2 * d2 != d1 * d3) continue;
    const Rational r = d2 / d1;
    if (!(abs(r) < 1) || r == 0) continue;
    const Rational limit = pts[3]->t + d3 * r / (1 - r);
    if (limit < 0 || limit > 1) continue;
    const EdgeId edge = pts[0]->edge;
    // forward: f^q maps [x_2, L] into itself; backward: f^q maps [x_3, L] onto a superset
    detail::Segment seg{edge, backward ? pts[3]->t : pts[2]->t, limit};
    bool affine = true;
    for (std::size_t i = 0; i < q && affine; ++i) {
      auto next = detail::affine_step(f, seg);
      if (!next) affine = false;
      else seg = *next;
    }
    if (!affine) continue;
    const TreePoint lp = space.canonical(TreePoint{edge, limit});
    if (!(space.canonical(TreePoint{seg.edge, seg.b}) == lp)) continue;
    auto orbit = detail::exact_orbit(f, lp, q);
    if (orbit.empty()) continue;
    return orbit;
  }
  return std::nullopt;
}

/// omega_f(p) from the orbit segment [transient, transient + window).
/// Eventually periodic orbits and geometrically converging tails give the
/// exact finite limit set; otherwise an epsilon-net of the window.
inline TreeSetApprox omega_limit(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                                 std::size_t transient = kDefaultTransient, std::size_t window = kDefaultWindow) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (window < 1) throw Error(ErrorKind::InvalidArgument, "window must be at least 1");
  const TreeSpace& space = f.space();
  TreeSetApprox out;
  out.kind = LimitKind::Omega;
  out.epsilon = eps;
  out.budgets = {{"transient", detail::as_budget(transient)}, {"window", detail::as_budget(window)}};

  auto run = [&](std::size_t steps, std::vector<TreePoint>& orbit) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::unordered_map<TreePoint, std::size_t, TreePointHash> seen;
    orbit.clear();
    TreePoint x = space.canonical(p);
    for (std::size_t i = 0; i < steps; ++i) {
      auto [it, fresh] = seen.emplace(x, i);
      if (!fresh) return std::make_pair(it->second, i);
      orbit.push_back(x);
      x = f.evaluate(x);
    }
    return std::nullopt;
  };

  std::vector<TreePoint> orbit;
  if (auto cycle = run(transient + window, orbit)) {
    out.points = TreePointSet(std::vector<TreePoint>(orbit.begin() + static_cast<long>(cycle->first), orbit.end()));
    out.exact = out.converged = true;
    out.note = "orbit is eventually periodic with period " + std::to_string(cycle->second - cycle->first);
    return out;
  }
  if (auto limit = geometric_tail_limit(f, orbit, false)) {
    out.points = TreePointSet(std::move(*limit));
    out.exact = out.converged = true;
    out.note = "orbit converges geometrically to a cycle of period " + std::to_string(out.points.size());
    return out;
  }
  auto net_of = [&](std::span<const TreePoint> tail) {
    return detail::greedy_net(space, tail, eps / 2);
  };
  auto net = net_of(std::span<const TreePoint>(orbit).subspan(transient));
  std::vector<TreePoint> longer;
  run(2 * (transient + window), longer);
  auto net2 = net_of(std::span<const TreePoint>(longer).subspan(2 * transient));
  out.converged = hausdorff_distance(space, net, net2) <= eps;
  out.points = TreePointSet(std::move(net));
  out.note = "epsilon-net of the orbit window";
  return out;
}

/// Smallest m with 2^-m <= eps.
inline std::uint64_t symbolic_depth(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  std::uint64_t m = 0;
  while (dyadic(m) > eps) ++m;
  return m;
}

/// omega for the shift on L. Points within 2^-m of one another share their
/// first m coordinates, so the net is the set of m-truncations of the
/// window's orbit points.
inline SymbolicSetApprox omega_limit(const ShiftSystem& s, const SymbolicPoint& x, const Rational& eps,
                                     std::size_t transient = kDefaultTransient, std::size_t window = kDefaultWindow) {
  if (!s.contains(x)) throw Error(ErrorKind::MalformedPoint, x.to_string() + " is not in L");
  const std::uint64_t m = symbolic_depth(eps);
  SymbolicSetApprox out;
  out.kind = LimitKind::Omega;
  out.epsilon = eps;
  out.budgets = {{"transient", detail::as_budget(transient)}, {"window", detail::as_budget(window)}};
  auto run = [&](std::size_t t0, std::size_t w, bool& cyclic) {
    std::map<SymbolicPoint, std::size_t> seen;
    std::vector<SymbolicPoint> orbit;
    SymbolicPoint y = x;
    cyclic = false;
    for (std::size_t i = 0; i < t0 + w; ++i) {
      auto [it, fresh] = seen.emplace(y, i);
      if (!fresh) {
        cyclic = true;
        return std::vector<SymbolicPoint>(orbit.begin() + static_cast<long>(it->second), orbit.end());
      }
      orbit.push_back(y);
      y = s.apply(y);
    }
    std::vector<SymbolicPoint> net;
    for (std::size_t i = t0; i < orbit.size(); ++i) net.push_back(orbit[i].truncated(m));
    return net;
  };
  bool cyclic = false;
  auto pts = run(transient, window, cyclic);
  if (cyclic) {
    out.points = FiniteSet<SymbolicPoint>(std::move(pts));
    out.exact = out.converged = true;
    out.note = "orbit is eventually periodic";
    return out;
  }
  bool again = false;
  FiniteSet<SymbolicPoint> net(std::move(pts)), net2(run(2 * transient, 2 * window, again));
  out.converged = hausdorff_distance_brute<SymbolicPoint>(net.points(), net2.points(), symbolic_distance) <= eps;
  out.points = std::move(net);
  out.note = "distinct " + std::to_string(m) + "-prefixes of the orbit window";
  return out;
}

namespace detail {

inline TreeSetApprox alpha_from_tree(const PwAffineTreeMap& f, const BackwardTree& tree, const Rational& eps,
                                     std::size_t depth) {
  const TreeSpace& space = f.space();
  TreeSetApprox out;
  out.kind = LimitKind::Alpha;
  out.epsilon = eps;
  out.budgets = {{"depth", as_budget(depth)}};
  for (std::size_t n = 1; n < tree.levels.size(); ++n)
    if (tree.levels[n].empty()) {
      out.exact = out.converged = true;
      out.note = "no preimage at level " + std::to_string(n);
      return out;
    }
  // a single backward chain: its geometric tail limit is the whole alpha-limit
  std::vector<TreePoint> chain;
  for (const auto& level : tree.levels) {
    if (level.size() != 1) break;
    const auto pts = level.front().set.extreme_points(space);
    if (pts.size() != 1) break;
    chain.push_back(pts.front());
  }
  if (chain.size() == tree.levels.size()) {
    if (auto limit = geometric_tail_limit(f, chain, true)) {
      out.exact = out.converged = true;
      out.points = make_point_set(space, std::move(*limit));
      out.note = "single backward chain, exact tail limit";
      return out;
    }
  }
  auto net_of = [&](std::size_t from, std::size_t to) {
    const SubtreeSet u = tree.union_of_levels(space, from, to);
    return thin_along_edges(space, u.sample(space, eps / 2), eps / 4);
  };
  auto net = net_of(depth / 2, depth);
  auto coarse = net_of(depth / 4, depth / 2);
  out.converged = hausdorff_distance(space, net, coarse) <= eps;
  out.points = TreePointSet(std::move(net));
  out.note = "preimage levels " + std::to_string(depth / 2) + ".." + std::to_string(depth);
  return out;
}

}  // namespace detail

/// Union of the preimage levels [depth/2, depth] of p.
inline SubtreeSet alpha_tail(const PwAffineTreeMap& f, const TreePoint& p, std::size_t depth,
                             std::size_t cap = kDefaultComponentCap) {
  return backward_tree(f, p, depth, cap).union_of_levels(f.space(), depth / 2, depth);
}

/// alpha_f(p): epsilon-net of the preimage levels [depth/2, depth].
/// `converged` compares against levels [depth/4, depth/2].
inline TreeSetApprox alpha_limit(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                                 std::size_t depth = kDefaultDepth, std::size_t cap = kDefaultComponentCap) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const auto tree = backward_tree(f, p, depth, cap);
  return detail::alpha_from_tree(f, tree, eps, depth);
}

/// Points of a preimage component that can carry a negative orbit's
/// limit: its extreme points, the map's breakpoints inside it, and (when
/// `y` is periodic) the orbit predecessor of `y` if it lies in it.
inline std::vector<TreePoint> component_representatives(const PwAffineTreeMap& f, const SubtreeSet& comp,
                                                        const std::optional<TreePoint>& periodic_predecessor) {
  const TreeSpace& space = f.space();
  std::vector<TreePoint> reps = comp.extreme_points(space);
  for (const auto& iv : comp.intervals()) {
    for (const auto& piece : f.pieces_on(iv.edge)) {
      if (iv.lo < piece.lo && piece.lo < iv.hi) reps.push_back(space.canonical(TreePoint{iv.edge, piece.lo}));
    }
  }
  if (periodic_predecessor && comp.contains(space, *periodic_predecessor)) reps.push_back(*periodic_predecessor);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

/// f^(q-1)(y) when y is periodic with period q <= max_period.
inline std::optional<TreePoint> periodic_predecessor(const PwAffineTreeMap& f, const TreePoint& y,
                                                     std::size_t max_period = 64) {
  auto orbit = detail::exact_orbit(f, y, max_period);
  if (orbit.empty()) return std::nullopt;
  return orbit.back();
}

/// Representatives of all components of f^-1(y).
inline std::vector<TreePoint> preimage_representatives(const PwAffineTreeMap& f, const TreePoint& y) {
  const auto pred = periodic_predecessor(f, y);
  std::vector<TreePoint> reps;
  for (const auto& comp : f.preimage(y)) {
    auto r = component_representatives(f, comp, pred);
    reps.insert(reps.end(), r.begin(), r.end());
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

enum class BranchPolicy { StayAtRoot, Leftmost, FarthestFromRoot, Script };

inline const char* to_string(BranchPolicy p) {
  switch (p) {
    case BranchPolicy::StayAtRoot: return "stay";
    case BranchPolicy::Leftmost: return "leftmost";
    case BranchPolicy::FarthestFromRoot: return "farthest";
    case BranchPolicy::Script: return "script";
  }
  return "?";
}

struct BranchChoice {
  BranchPolicy policy = BranchPolicy::StayAtRoot;
  std::vector<std::size_t> script;  // indices into the sorted representatives, cycled
};

namespace detail {

/// Limit set of one negative orbit prefix: a repeated point closes a cycle,
/// a geometric tail is extrapolated, anything else falls back to a net of
/// the second half of the chain.
inline TreeSetApprox chain_limit(const PwAffineTreeMap& f, const std::vector<TreePoint>& chain, const Rational& eps) {
  const TreeSpace& space = f.space();
  TreeSetApprox out;
  out.epsilon = eps;
  std::unordered_map<TreePoint, std::size_t, TreePointHash> seen;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    auto [it, fresh] = seen.emplace(chain[i], i);
    if (!fresh) {
      out.points = TreePointSet(std::vector<TreePoint>(chain.begin() + static_cast<long>(it->second),
                                                       chain.begin() + static_cast<long>(i)));
      out.exact = out.converged = true;
      out.note = "negative orbit closes a cycle";
      return out;
    }
  }
  if (auto limit = geometric_tail_limit(f, chain, true)) {
    out.points = TreePointSet(std::move(*limit));
    out.exact = out.converged = true;
    out.note = "negative orbit converges geometrically";
    return out;
  }
  const std::size_t half = chain.size() / 2;
  auto net = greedy_net(space, std::span<const TreePoint>(chain).subspan(half), eps / 2);
  auto coarse = greedy_net(space, std::span<const TreePoint>(chain).subspan(half / 2, half - half / 2), eps / 2);
  out.converged = hausdorff_distance(space, net, coarse) <= eps;
  out.points = TreePointSet(std::move(net));
  out.note = "epsilon-net of the negative orbit tail";
  return out;
}

}  // namespace detail

/// Alpha-limit of the single negative orbit selected by `choice`.
inline TreeSetApprox branch_alpha_limit(const PwAffineTreeMap& f, const TreePoint& p, const BranchChoice& choice,
                                        const Rational& eps, std::size_t depth = kDefaultDepth) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const TreeSpace& space = f.space();
  const TreePoint root = space.canonical(p);
  std::vector<TreePoint> chain{root};
  std::unordered_map<TreePoint, std::size_t, TreePointHash> seen{{root, 0}};
  for (std::size_t n = 0; n < depth; ++n) {
    auto reps = preimage_representatives(f, chain.back());
    if (reps.empty())
      throw Error(ErrorKind::PolicyDeadEnd, "no preimage of " + format_point(space, chain.back()) + " at level " +
                                                std::to_string(n + 1));
    std::size_t pick = 0;
    switch (choice.policy) {
      case BranchPolicy::Leftmost: break;
      case BranchPolicy::StayAtRoot: {
        auto it = std::find(reps.begin(), reps.end(), root);
        if (it != reps.end()) {
          pick = static_cast<std::size_t>(it - reps.begin());
        } else {
          for (std::size_t i = 1; i < reps.size(); ++i)
            if (space.distance(reps[i], root) < space.distance(reps[pick], root)) pick = i;
        }
        break;
      }
      case BranchPolicy::FarthestFromRoot:
        for (std::size_t i = 1; i < reps.size(); ++i)
          if (space.distance(reps[i], root) > space.distance(reps[pick], root)) pick = i;
        break;
      case BranchPolicy::Script:
        if (choice.script.empty()) throw Error(ErrorKind::InvalidArgument, "empty branch script");
        pick = choice.script[n % choice.script.size()];
        if (pick >= reps.size())
          throw Error(ErrorKind::PolicyDeadEnd, "script index " + std::to_string(pick) + " out of range at level " +
                                                    std::to_string(n + 1));
        break;
    }
    chain.push_back(reps[pick]);
    // a deterministic policy repeats itself once a point recurs
    if (choice.policy != BranchPolicy::Script && !seen.emplace(chain.back(), chain.size() - 1).second) break;
  }
  auto out = detail::chain_limit(f, chain, eps);
  out.kind = LimitKind::Branch;
  out.budgets = {{"depth", detail::as_budget(depth)}};
  out.negative_orbit = std::move(chain);
  out.note = std::string("policy ") + to_string(choice.policy) + ": " + out.note;
  return out;
}

/// s-alpha_f(p) by enumerating negative orbits through component
/// representatives. Points are graph nodes, edges run from a point to each
/// representative of its preimage. Nodes on a cycle are limits of the
/// negative orbit that winds around it; chains still open at `depth` are
/// resolved by geometric_tail_limit, or by a net of their tail.
inline TreeSetApprox special_alpha_limit_direct(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                                                std::size_t depth = kDefaultDepth,
                                                std::size_t branch_budget = kDefaultBranchBudget) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const TreeSpace& space = f.space();
  struct Node {
    TreePoint point;
    std::size_t depth;
    std::size_t parent;
    std::vector<std::size_t> next;
  };
  std::vector<Node> nodes{{space.canonical(p), 0, 0, {}}};
  std::unordered_map<TreePoint, std::size_t, TreePointHash> index{{nodes[0].point, 0}};
  std::vector<std::size_t> frontier;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth == depth) {
      frontier.push_back(head);
      continue;
    }
    for (auto& rep : preimage_representatives(f, nodes[head].point)) {
      auto [it, fresh] = index.emplace(rep, nodes.size());
      if (fresh) {
        if (nodes.size() >= branch_budget)
          throw BudgetExceeded("special alpha enumeration exceeded " + std::to_string(branch_budget) + " branch points",
                               static_cast<long>(nodes[head].depth + 1));
        nodes.push_back(Node{std::move(rep), nodes[head].depth + 1, head, {}});
      }
      nodes[head].next.push_back(it->second);
    }
  }

  // Tarjan, iterative
  const std::size_t n = nodes.size();
  std::vector<std::size_t> order(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, comps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (order[s] != SIZE_MAX) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{s, 0}};
    order[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!work.empty()) {
      auto& [v, i] = work.back();
      if (i < nodes[v].next.size()) {
        const std::size_t w = nodes[v].next[i++];
        if (order[w] == SIZE_MAX) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      if (low[v] == order[v]) {
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }
  std::vector<std::size_t> comp_size(comps, 0);
  for (std::size_t v = 0; v < n; ++v) ++comp_size[comp[v]];

  std::vector<TreePoint> limit;
  for (std::size_t v = 0; v < n; ++v) {
    bool self_loop = std::find(nodes[v].next.begin(), nodes[v].next.end(), v) != nodes[v].next.end();
    if (comp_size[comp[v]] > 1 || self_loop) limit.push_back(nodes[v].point);
  }
  bool exact = true;
  std::size_t extrapolated = 0, netted = 0;
  for (std::size_t leaf : frontier) {
    std::vector<TreePoint> chain;
    for (std::size_t v = leaf;; v = nodes[v].parent) {
      chain.push_back(nodes[v].point);
      if (v == 0) break;
    }
    std::reverse(chain.begin(), chain.end());
    auto tail = detail::chain_limit(f, chain, eps);
    if (tail.exact) ++extrapolated;
    else { exact = false; ++netted; }
    limit.insert(limit.end(), tail.points.begin(), tail.points.end());
  }
  TreeSetApprox out;
  out.kind = LimitKind::SpecialAlpha;
  out.epsilon = eps;
  out.budgets = {{"depth", detail::as_budget(depth)},
                 {"branch_budget", detail::as_budget(branch_budget)},
                 {"branch_points", detail::as_budget(n)}};
  out.points = TreePointSet(std::move(limit));
  out.exact = exact;
  out.converged = exact;
  if (!exact && depth >= 8) {
    auto half = special_alpha_limit_direct(f, p, eps, depth / 2, branch_budget);
    out.converged = (out.points.empty() && half.points.empty()) ||
                    (!out.points.empty() && !half.points.empty() &&
                     hausdorff_distance(space, out.points, half.points) <= eps);
  }
  out.note = std::to_string(n) + " branch points, " + std::to_string(frontier.size()) + " open chains (" +
             std::to_string(extrapolated) + " extrapolated exactly, " + std::to_string(netted) + " netted)";
  return out;
}

/// s-alpha_f(p) as alpha_f(p) intersected with the nonwandering set: the
/// preimage tail is sampled at pitch eps/2 and each sample is kept when
/// `nonwandering(point, eps/2)` holds.
template <class NonwanderingTest>
TreeSetApprox special_alpha_limit_via_theorem(const PwAffineTreeMap& f, const TreePoint& p, const Rational& eps,
                                              NonwanderingTest&& nonwandering, std::size_t depth = kDefaultDepth,
                                              std::size_t cap = kDefaultComponentCap) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  const TreeSpace& space = f.space();
  const auto tree = backward_tree(f, p, depth, cap);
  TreeSetApprox out;
  out.kind = LimitKind::SpecialAlphaTheorem;
  out.epsilon = eps;
  out.budgets = {{"depth", detail::as_budget(depth)}};
  for (std::size_t n = 1; n < tree.levels.size(); ++n)
    if (tree.levels[n].empty()) {
      out.exact = out.converged = true;
      out.note = "no preimage at level " + std::to_string(n);
      return out;
    }
  const Rational radius = eps / 2;
  const auto samples = tree.union_of_levels(space, depth / 2, depth).sample(space, radius);
  std::vector<TreePoint> kept;
  for (const auto& q : samples)
    if (nonwandering(q, radius)) kept.push_back(q);
  const std::size_t tested = samples.size(), passed = kept.size();
  out.points = TreePointSet(thin_along_edges(space, std::move(kept), eps / 4));
  out.converged = true;
  out.note = std::to_string(passed) + " of " + std::to_string(tested) + " alpha samples nonwandering at radius " +
             to_string(radius);
  return out;
}

}  // namespace limitlab
