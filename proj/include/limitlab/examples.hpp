#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/symbolic.hpp"
#include "limitlab/systems.hpp"

namespace limitlab {

/// A map together with the points the example is about.
struct ExampleSystem {
  std::string name;
  PwAffineTreeMap map;
  std::vector<std::pair<std::string, TreePoint>> landmarks;

  const TreeSpace& space() const { return map.space(); }

  TreePoint landmark(const std::string& label) const {
    for (const auto& [l, p] : landmarks)
      if (l == label) return p;
    throw Error(ErrorKind::InvalidArgument, "example '" + name + "' has no landmark '" + label + "'");
  }
};

namespace detail {

struct StarBuilder {
  std::vector<std::string> names{"z0"};
  std::vector<Edge> edges;

  EdgeId beam(const std::string& edge_name, const std::string& tip, Rational length) {
    names.push_back(tip);
    edges.push_back(Edge{edge_name, 0, names.size() - 1, std::move(length)});
    return edges.size() - 1;
  }

  std::shared_ptr<const TreeSpace> build(std::vector<MetricLink> links = {}) const {
    return std::make_shared<const TreeSpace>(names, edges, 0, std::move(links));
  }
};

inline TreePoint tip(EdgeId e) { return TreePoint{e, 1}; }
inline TreePoint base(EdgeId e) { return TreePoint{e, 0}; }

/// Beam `from` carries max{0, 2t-1} onto beam `to`.
inline void tent_tail_beam(std::vector<SegmentAction>& segs, EdgeId from, EdgeId to) {
  segs.push_back(SegmentAction{from, 0, make_rational(1, 2), base(from), base(from)});
  segs.push_back(SegmentAction{from, make_rational(1, 2), 1, base(to), tip(to)});
}

}  // namespace detail

/// g(x) = max{0, 2x - 1} on the unit interval.
inline ExampleSystem build_tent_tail() {
  auto space = std::make_shared<const TreeSpace>(std::vector<std::string>{"a", "b"},
                                                 std::vector<Edge>{Edge{"I", 0, 1, 1}}, 0);
  std::vector<SegmentAction> segs;
  detail::tent_tail_beam(segs, 0, 0);
  return ExampleSystem{"tent-tail", PwAffineTreeMap(space, std::move(segs)),
                       {{"0", TreePoint{0, 0}}, {"1", TreePoint{0, 1}}}};
}

/// x -> 1 - |2x - 1|. Not monotone.
inline ExampleSystem build_full_tent() {
  auto space = std::make_shared<const TreeSpace>(std::vector<std::string>{"a", "b"},
                                                 std::vector<Edge>{Edge{"I", 0, 1, 1}}, 0);
  std::vector<SegmentAction> segs{
      SegmentAction{0, 0, make_rational(1, 2), TreePoint{0, 0}, TreePoint{0, 1}},
      SegmentAction{0, make_rational(1, 2), 1, TreePoint{0, 1}, TreePoint{0, 0}},
  };
  return ExampleSystem{"full-tent", PwAffineTreeMap(space, std::move(segs)), {{"0", TreePoint{0, 0}}}};
}

inline std::string star_beam_name(std::size_t n, std::size_t k) {
  return "I" + std::to_string(n) + "_" + std::to_string(k);
}
inline std::string star_tip_name(std::size_t n, std::size_t k) {
  return "z" + std::to_string(n) + "_" + std::to_string(k);
}

/// f_N = h_N o f_1 on the N-star with unit beams: tent-tail along each beam,
/// then beam k goes to beam k+1 mod N.
inline ExampleSystem build_star_map(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "star:N needs N >= 1");
  detail::StarBuilder b;
  for (std::size_t k = 0; k < n; ++k) b.beam(star_beam_name(n, k), star_tip_name(n, k), 1);
  auto space = b.build();
  std::vector<SegmentAction> segs;
  for (std::size_t k = 0; k < n; ++k) detail::tent_tail_beam(segs, k, (k + 1) % n);
  ExampleSystem ex{"star:" + std::to_string(n), PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back("z0", space->vertex_point(0));
  for (std::size_t k = 0; k < n; ++k) ex.landmarks.emplace_back(star_tip_name(n, k), space->canonical(detail::tip(k)));
  return ex;
}

/// S_1 u ... u S_Nmax glued at z0, beams of S_N of length 1/N, f = f_N on S_N.
inline ExampleSystem build_infinite_star(std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "inf-star:N needs N >= 1");
  detail::StarBuilder b;
  std::vector<std::vector<EdgeId>> ids(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t k = 0; k < n; ++k)
      ids[n].push_back(b.beam(star_beam_name(n, k), star_tip_name(n, k), make_rational(1, static_cast<long>(n))));
  auto space = b.build();
  std::vector<SegmentAction> segs;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t k = 0; k < n; ++k) detail::tent_tail_beam(segs, ids[n][k], ids[n][(k + 1) % n]);
  ExampleSystem ex{"inf-star:" + std::to_string(n_max), PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back("z0", space->vertex_point(0));
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t k = 0; k < n; ++k)
      ex.landmarks.emplace_back(star_tip_name(n, k), space->canonical(detail::tip(ids[n][k])));
  return ex;
}

/// Endpoint orbit of the sub-star S_N inside build_infinite_star.
inline std::vector<TreePoint> infinite_star_orbit(const ExampleSystem& ex, std::size_t n) {
  std::vector<TreePoint> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(ex.landmark(star_tip_name(n, k)));
  return out;
}

/// Infinite star truncated to beams 1..Nmax (beam n of length 1/n), tent-tail
/// in every beam coordinate; z0 and every endpoint z_n are fixed.
inline ExampleSystem build_e616_star(std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "e616:N needs N >= 1");
  detail::StarBuilder b;
  for (std::size_t n = 1; n <= n_max; ++n)
    b.beam("I" + std::to_string(n), "z" + std::to_string(n), make_rational(1, static_cast<long>(n)));
  auto space = b.build();
  std::vector<SegmentAction> segs;
  for (EdgeId e = 0; e < n_max; ++e) detail::tent_tail_beam(segs, e, e);
  ExampleSystem ex{"e616:" + std::to_string(n_max), PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back("z0", space->vertex_point(0));
  for (std::size_t n = 1; n <= n_max; ++n)
    ex.landmarks.emplace_back("z" + std::to_string(n), space->canonical(detail::tip(n - 1)));
  return ex;
}

inline ShiftSystem build_shift_example() { return ShiftSystem{}; }

/// k_n = n(n-1)/2 + n, the index of the n-th one of Z.
inline std::uint64_t k_formula(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "k_n is defined for n >= 1");
  return n * (n - 1) / 2 + n;
}

/// Position of the first one in sigma^k(Z).
inline std::uint64_t first_one_of_shifted_z(std::uint64_t k) {
  const auto z = SymbolicPoint::shifted_z(k);
  for (std::uint64_t n = 1;; ++n)
    if (z.coordinate(n) == 1) return n;
}

/// Finite model of the dendroid D: beams I_i (1 <= |i| <= M) from T_0 to
/// T_i, arcs J_0..J_K from T_0 to sigma^k(Z). Lengths are the symbolic
/// distances to T_0; each arc tip is linked to its nearest landmark T_i by a
/// metric shortcut of the symbolic distance between them.
inline ExampleSystem build_dendroid_example(std::size_t m, std::size_t k_arcs) {
  if (m < 2 || k_arcs < 1) throw Error(ErrorKind::InvalidArgument, "dendroid:M,K needs M >= 2 and K >= 1");
  detail::StarBuilder b;
  b.names[0] = "T0";
  std::vector<EdgeId> pos(m + 1), neg(m + 1), arc(k_arcs + 1);
  for (std::size_t i = 1; i <= m; ++i)
    pos[i] = b.beam("I" + std::to_string(i), "T" + std::to_string(i), dyadic(i));
  for (std::size_t i = 1; i <= m; ++i)
    neg[i] = b.beam("I-" + std::to_string(i), "T-" + std::to_string(i), dyadic(i + 1));
  std::vector<MetricLink> links;
  for (std::size_t k = 0; k <= k_arcs; ++k) {
    const std::uint64_t first = first_one_of_shifted_z(k);
    arc[k] = b.beam("J" + std::to_string(k), "e" + std::to_string(k), dyadic(first));
    if (first <= m) {
      const Rational delta = symbolic_distance(SymbolicPoint::shifted_z(k), SymbolicPoint::landmark(first));
      links.push_back(MetricLink{b.edges[arc[k]].to, b.edges[pos[first]].to, delta});
    }
  }
  auto space = b.build(std::move(links));
  std::vector<SegmentAction> segs;
  auto onto = [&](EdgeId from, EdgeId to) {
    segs.push_back(SegmentAction{from, 0, 1, detail::base(to), detail::tip(to)});
  };
  auto collapse = [&](EdgeId from) {
    segs.push_back(SegmentAction{from, 0, 1, detail::base(from), detail::base(from)});
  };
  collapse(pos[1]);
  for (std::size_t i = 2; i <= m; ++i) onto(pos[i], pos[i - 1]);
  onto(neg[1], arc[0]);
  for (std::size_t i = 2; i <= m; ++i) onto(neg[i], neg[i - 1]);
  for (std::size_t k = 0; k < k_arcs; ++k) onto(arc[k], arc[k + 1]);
  collapse(arc[k_arcs]);
  ExampleSystem ex{"dendroid:" + std::to_string(m) + "," + std::to_string(k_arcs),
                   PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back("T0", space->vertex_point(0));
  for (std::size_t i = 1; i <= m; ++i) ex.landmarks.emplace_back("T" + std::to_string(i), space->canonical(detail::tip(pos[i])));
  for (std::size_t i = 1; i <= m; ++i) ex.landmarks.emplace_back("T-" + std::to_string(i), space->canonical(detail::tip(neg[i])));
  for (std::size_t k = 0; k <= k_arcs; ++k) ex.landmarks.emplace_back("e" + std::to_string(k), space->canonical(detail::tip(arc[k])));
  return ex;
}

/// Smallest-return-time resolution for T_1 in the dendroid: the second-closest
/// arc tip near T_1 among the arcs present.
inline Rational dendroid_matched_epsilon(std::size_t k_arcs) {
  std::vector<Rational> deltas;
  for (std::size_t k = 0; k <= k_arcs; ++k)
    if (first_one_of_shifted_z(k) == 1)
      deltas.push_back(symbolic_distance(SymbolicPoint::shifted_z(k), SymbolicPoint::landmark(1)));
  if (deltas.size() < 2) throw Error(ErrorKind::InvalidArgument, "too few arcs near T1 for a return");
  std::sort(deltas.begin(), deltas.end());
  return deltas[1];
}

/// The dendroid is rational but not a regular curve; every other example is
/// a finite tree.
inline bool is_regular_curve(const ExampleSystem& ex) { return ex.name.rfind("dendroid:", 0) != 0; }

/// Default resolution for queries on `ex`: 2^-10, except the dendroid, whose
/// truncation only resolves returns to T_1 down to the matched epsilon.
inline Rational suggested_epsilon(const ExampleSystem& ex) {
  if (!is_regular_curve(ex)) {
    const auto comma = ex.name.find(',');
    return dendroid_matched_epsilon(std::stoul(ex.name.substr(comma + 1)));
  }
  return dyadic(10);
}

/// Identity on the N-star with unit beams.
inline ExampleSystem build_identity_star(std::size_t n) {
  detail::StarBuilder b;
  for (std::size_t k = 0; k < n; ++k) b.beam("I" + std::to_string(k), "z" + std::to_string(k + 1), 1);
  auto space = b.build();
  std::vector<SegmentAction> segs;
  for (EdgeId e = 0; e < n; ++e) segs.push_back(SegmentAction{e, 0, 1, detail::base(e), detail::tip(e)});
  ExampleSystem ex{"identity:" + std::to_string(n), PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back("z0", space->vertex_point(0));
  return ex;
}

/// Two-beam star: beam 0 collapses to the center, beam 1 is tent-tail.
/// f(X) is a proper subtree.
inline ExampleSystem build_collapse_star() {
  detail::StarBuilder b;
  b.beam("A", "a", 1);
  b.beam("B", "b", 1);
  auto space = b.build();
  std::vector<SegmentAction> segs{SegmentAction{0, 0, 1, detail::base(0), detail::base(0)}};
  detail::tent_tail_beam(segs, 1, 1);
  return ExampleSystem{"collapse-star", PwAffineTreeMap(space, std::move(segs)), {{"z0", space->vertex_point(0)}}};
}

/// Random monotone star map: B unit beams (2 <= B <= 5); beam k is mapped by
/// a non-decreasing piecewise-affine phi_k with phi_k(0) = 0 onto beam
/// pi(k) for a random permutation pi. Breakpoints and values lie on the
/// 1/8 grid and every slope is 0 or at least 2, so each periodic orbit is
/// superattracting or repelling by a factor >= 2 on each side.
inline ExampleSystem build_random_monotone_star(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t beams = 2 + static_cast<std::size_t>(rng() % 4);
  detail::StarBuilder b;
  for (std::size_t k = 0; k < beams; ++k) b.beam("I" + std::to_string(k), "z" + std::to_string(k + 1), 1);
  auto space = b.build();
  std::vector<std::size_t> perm(beams);
  for (std::size_t k = 0; k < beams; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<SegmentAction> segs;
  for (std::size_t k = 0; k < beams; ++k) {
    std::vector<long> cuts{0, 8};
    const std::size_t extra = 1 + rng() % 3;
    for (std::size_t i = 0; i < extra; ++i) cuts.push_back(1 + static_cast<long>(rng() % 7));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // every piece is flat or has slope >= 2
    std::vector<long> values{0};
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      const long width = cuts[i] - cuts[i - 1];
      const long room = 8 - values.back();
      long rise = 0;
      if (room >= 2 * width && rng() % 3 != 0)
        rise = 2 * width + static_cast<long>(rng() % static_cast<std::uint64_t>(room - 2 * width + 1));
      values.push_back(values.back() + rise);
    }
    const EdgeId target = perm[k];
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      segs.push_back(SegmentAction{k, make_rational(cuts[i], 8), make_rational(cuts[i + 1], 8),
                                   TreePoint{target, make_rational(values[i], 8)},
                                   TreePoint{target, make_rational(values[i + 1], 8)}});
  }
  return ExampleSystem{"random:" + std::to_string(seed), PwAffineTreeMap(space, std::move(segs)),
                       {{"z0", space->vertex_point(0)}}};
}

struct ExampleInfo {
  std::string name;
  std::string description;
};

inline std::vector<ExampleInfo> example_catalog() {
  return {
      {"tent-tail", "g(x) = max{0, 2x-1} on [0,1]"},
      {"full-tent", "x -> 1-|2x-1| on [0,1] (not monotone)"},
      {"star:N", "N-star with unit beams, f_N = h_N o f_1"},
      {"inf-star:N", "S_1 u ... u S_N glued at z0, beams of S_n of length 1/n"},
      {"e616:N", "N beams of lengths 1/n, tent-tail on each beam"},
      {"shift", "shift on orbit(Z) u {T_i} u {0^i Z}"},
      {"dendroid:M,K", "beams I_{+-1..M}, arcs J_0..J_K, linked metric"},
      {"identity:N", "identity on the N-star"},
      {"collapse-star", "2-star, beam A collapsed to the center"},
      {"random:SEED", "random monotone piecewise-affine star map"},
  };
}

/// `name[:params]` to an example. The shift example is symbolic and is
/// handled separately.
inline ExampleSystem build_example(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
      throw Error(ErrorKind::Parse, "bad parameter '" + s + "' in example '" + spec + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  auto need_none = [&] {
    if (colon != std::string::npos) throw Error(ErrorKind::Parse, "example '" + name + "' takes no parameters");
  };
  if (name == "tent-tail") { need_none(); return build_tent_tail(); }
  if (name == "full-tent") { need_none(); return build_full_tent(); }
  if (name == "collapse-star") { need_none(); return build_collapse_star(); }
  if (name == "star") return build_star_map(number(params));
  if (name == "inf-star") return build_infinite_star(number(params));
  if (name == "e616") return build_e616_star(number(params));
  if (name == "identity") return build_identity_star(number(params));
  if (name == "random") return build_random_monotone_star(number(params));
  if (name == "dendroid") {
    const auto comma = params.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::Parse, "dendroid needs parameters M,K");
    return build_dendroid_example(number(params.substr(0, comma)), number(params.substr(comma + 1)));
  }
  throw Error(ErrorKind::Parse, "unknown example '" + name + "'");
}

}  // namespace limitlab
