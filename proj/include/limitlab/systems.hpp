#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/verdict.hpp"

namespace limitlab {

/// The segment [lo, hi] of `edge` is mapped affinely (in arc length) onto the
/// arc running from `from` to `to`. `from == to` makes the segment constant.
struct SegmentAction {
  EdgeId edge = 0;
  Rational lo;
  Rational hi;
  TreePoint from;
  TreePoint to;
};

/// Elementary piece: [lo, hi] on `edge` goes to parameter offset + slope*s on
/// the single edge `target`. Every map is stored as these.
struct AffinePiece {
  EdgeId edge = 0;
  Rational lo;
  Rational hi;
  EdgeId target = 0;
  Rational offset;
  Rational slope;

  Rational apply(const Rational& s) const { return offset + slope * s; }
  std::pair<Rational, Rational> image_range() const {
    Rational a = apply(lo), b = apply(hi);
    if (b < a) std::swap(a, b);
    return {a, b};
  }
};

struct ArcPiece {
  EdgeId edge = 0;
  Rational t0;
  Rational t1;
};

namespace detail {

inline bool lies_on_edge(const TreeSpace& space, const TreePoint& p, EdgeId e, Rational& t) {
  if (auto v = space.vertex_at(p)) {
    const Edge& ed = space.edge(e);
    if (ed.from == *v) { t = 0; return true; }
    if (ed.to == *v) { t = 1; return true; }
    return false;
  }
  if (p.edge == e) { t = p.t; return true; }
  return false;
}

}  // namespace detail

/// The topological arc from `p` to `q` as per-edge parameter runs.
inline std::vector<ArcPiece> arc_pieces(const TreeSpace& space, const TreePoint& p_raw, const TreePoint& q_raw) {
  const TreePoint p = space.canonical(p_raw), q = space.canonical(q_raw);
  if (p == q) return {};
  // both on one edge
  std::vector<EdgeId> candidates{p.edge};
  if (auto v = space.vertex_at(p)) candidates = space.incident(*v);
  for (EdgeId e : candidates) {
    Rational tp, tq;
    if (detail::lies_on_edge(space, p, e, tp) && detail::lies_on_edge(space, q, e, tq))
      return {ArcPiece{e, tp, tq}};
  }
  const auto pv = space.vertex_at(p), qv = space.vertex_at(q);
  std::vector<VertexId> exits = pv ? std::vector<VertexId>{*pv}
                                   : std::vector<VertexId>{space.edge(p.edge).from, space.edge(p.edge).to};
  std::vector<VertexId> entries = qv ? std::vector<VertexId>{*qv}
                                     : std::vector<VertexId>{space.edge(q.edge).from, space.edge(q.edge).to};
  for (VertexId x : exits)
    for (VertexId y : entries) {
      auto path = space.vertex_path(x, y);
      auto contains = [&](VertexId w) { return std::find(path.begin(), path.end(), w) != path.end(); };
      if (!pv) {
        const Edge& ed = space.edge(p.edge);
        if (contains(ed.from == x ? ed.to : ed.from)) continue;
      }
      if (!qv) {
        const Edge& ed = space.edge(q.edge);
        if (contains(ed.from == y ? ed.to : ed.from)) continue;
      }
      std::vector<ArcPiece> out;
      if (!pv) out.push_back(ArcPiece{p.edge, p.t, space.edge(p.edge).from == x ? Rational(0) : Rational(1)});
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        EdgeId e = space.edge_between(path[i], path[i + 1]);
        bool forward = space.edge(e).from == path[i];
        out.push_back(ArcPiece{e, forward ? Rational(0) : Rational(1), forward ? Rational(1) : Rational(0)});
      }
      if (!qv) out.push_back(ArcPiece{q.edge, space.edge(q.edge).from == y ? Rational(0) : Rational(1), q.t});
      return out;
    }
  throw Error(ErrorKind::MalformedSpace, "no arc between points");
}

/// A continuous self-map of a TreeSpace, affine on each segment of a finite
/// subdivision of every edge. Validated on construction.
class PwAffineTreeMap {
 public:
  PwAffineTreeMap() = default;

  PwAffineTreeMap(std::shared_ptr<const TreeSpace> space, std::vector<SegmentAction> segments)
      : space_(std::move(space)), segments_(std::move(segments)) {
    if (!space_) throw Error(ErrorKind::MalformedMap, "map without a space");
    const TreeSpace& sp = *space_;
    for (auto& s : segments_) {
      sp.check_point(s.from);
      sp.check_point(s.to);
      if (s.edge >= sp.edge_count()) throw Error(ErrorKind::MalformedMap, "segment on unknown edge");
      if (s.lo < 0 || s.hi > 1) throw Error(ErrorKind::MalformedMap, "parameter out of [0,1]");
      s.from = sp.canonical(s.from);
      s.to = sp.canonical(s.to);
    }
    std::stable_sort(segments_.begin(), segments_.end(), [](const SegmentAction& a, const SegmentAction& b) {
      return a.edge != b.edge ? a.edge < b.edge : a.lo < b.lo;
    });
    validate();
    build_pieces();
  }

  const TreeSpace& space() const { return *space_; }
  const std::shared_ptr<const TreeSpace>& space_ptr() const { return space_; }
  const std::vector<SegmentAction>& segments() const { return segments_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  std::span<const AffinePiece> pieces_on(EdgeId e) const {
    return std::span<const AffinePiece>(pieces_).subspan(edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]);
  }

  /// Segment breakpoints of edge `e`, including 0 and 1.
  std::vector<Rational> breakpoints(EdgeId e) const {
    std::vector<Rational> out;
    for (const auto& s : segments_)
      if (s.edge == e) {
        if (out.empty()) out.push_back(s.lo);
        out.push_back(s.hi);
      }
    return out;
  }

  TreePoint evaluate(const TreePoint& raw) const {
    const TreePoint p = space_->canonical(raw);
    const AffinePiece& piece = piece_at(p);
    return space_->canonical(TreePoint{piece.target, piece.apply(p.t)});
  }

  TreePoint iterate(const TreePoint& p, std::uint64_t n) const {
    TreePoint x = space_->canonical(p);
    for (std::uint64_t i = 0; i < n; ++i) x = evaluate(x);
    return x;
  }

  /// Exact image of a closed set.
  SubtreeSet image(const SubtreeSet& set) const {
    std::vector<Interval> parts;
    std::vector<VertexId> verts;
    for (const auto& iv : set.intervals()) {
      for (const auto& piece : pieces_on(iv.edge)) {
        if (piece.hi < iv.lo || piece.lo > iv.hi) continue;
        const Rational& a = iv.lo > piece.lo ? iv.lo : piece.lo;
        const Rational& b = iv.hi < piece.hi ? iv.hi : piece.hi;
        parts.push_back(Interval{piece.target, piece.apply(a), piece.apply(b)});
      }
    }
    for (VertexId v : set.vertices()) {
      TreePoint img = evaluate(space_->vertex_point(v));
      if (auto w = space_->vertex_at(img)) verts.push_back(*w);
      else parts.push_back(Interval{img.edge, img.t, img.t});
    }
    return SubtreeSet::from_parts(*space_, std::move(parts), std::move(verts));
  }

  /// Exact full preimage of a closed set.
  SubtreeSet preimage_set(const SubtreeSet& set) const {
    std::vector<Interval> parts;
    for (EdgeId target = 0; target < space_->edge_count(); ++target) {
      const auto& incoming = by_target_[target];
      if (incoming.empty()) continue;
      const auto present = set.on_edge(*space_, target);
      if (present.empty()) continue;
      for (std::size_t idx : incoming) {
        const AffinePiece& piece = pieces_[idx];
        auto [m, M] = piece.image_range();
        for (const auto& [a, b] : present) {
          if (b < m || a > M) continue;
          if (piece.slope == 0) {
            parts.push_back(Interval{piece.edge, piece.lo, piece.hi});
            break;
          }
          Rational lo = a > m ? a : m;
          Rational hi = b < M ? b : M;
          Rational s0 = (lo - piece.offset) / piece.slope;
          Rational s1 = (hi - piece.offset) / piece.slope;
          parts.push_back(Interval{piece.edge, std::move(s0), std::move(s1)});
        }
      }
    }
    return SubtreeSet::from_parts(*space_, std::move(parts));
  }

  /// f^-1(p) split into maximal connected components.
  std::vector<SubtreeSet> preimage(const TreePoint& p) const {
    return preimage_set(SubtreeSet::point(*space_, space_->canonical(p))).components(*space_);
  }

 private:
  const AffinePiece& piece_at(const TreePoint& p) const {
    auto run = pieces_on(p.edge);
    auto it = std::upper_bound(run.begin(), run.end(), p.t,
                               [](const Rational& t, const AffinePiece& piece) { return t < piece.lo; });
    if (it == run.begin()) throw Error(ErrorKind::MalformedMap, "point outside every segment");
    return *std::prev(it);
  }

  void validate() const {
    const TreeSpace& sp = *space_;
    for (EdgeId e = 0; e < sp.edge_count(); ++e) {
      Rational expect = 0;
      bool any = false;
      for (const auto& s : segments_) {
        if (s.edge != e) continue;
        if (s.lo != expect || s.lo >= s.hi)
          throw Error(ErrorKind::MalformedMap, "non-contiguous breakpoints on edge '" + sp.edge(e).name + "'");
        if (any && !(previous_end(e, s.lo) == s.from))
          throw Error(ErrorKind::MalformedMap, "continuity violation at breakpoint " + to_string(s.lo) +
                                                   " of edge '" + sp.edge(e).name + "'");
        expect = s.hi;
        any = true;
      }
      if (!any || expect != 1)
        throw Error(ErrorKind::MalformedMap, "non-contiguous breakpoints on edge '" + sp.edge(e).name + "'");
    }
    for (VertexId v = 0; v < sp.vertex_count(); ++v) {
      std::optional<TreePoint> image;
      for (const auto& s : segments_) {
        const Edge& ed = sp.edge(s.edge);
        std::optional<TreePoint> here;
        if (ed.from == v && s.lo == 0) here = s.from;
        if (ed.to == v && s.hi == 1) here = s.to;
        if (!here) continue;
        if (image && !(*image == *here))
          throw Error(ErrorKind::MalformedMap, "continuity violation at vertex '" + sp.vertex_name(v) + "'");
        image = here;
      }
    }
  }

  const TreePoint& previous_end(EdgeId e, const Rational& at) const {
    for (const auto& s : segments_)
      if (s.edge == e && s.hi == at) return s.to;
    throw Error(ErrorKind::MalformedMap, "missing segment");
  }

  void build_pieces() {
    const TreeSpace& sp = *space_;
    for (const auto& s : segments_) {
      const auto arc = arc_pieces(sp, s.from, s.to);
      if (arc.empty()) {
        pieces_.push_back(AffinePiece{s.edge, s.lo, s.hi, s.from.edge, s.from.t, Rational(0)});
        continue;
      }
      Rational total = 0;
      std::vector<Rational> lens;
      for (const auto& a : arc) {
        lens.push_back(abs(Rational(a.t1 - a.t0)) * sp.edge(a.edge).length);
        total += lens.back();
      }
      Rational acc = 0;
      Rational width = s.hi - s.lo;
      for (std::size_t i = 0; i < arc.size(); ++i) {
        Rational s0 = s.lo + width * acc / total;
        acc += lens[i];
        Rational s1 = i + 1 == arc.size() ? s.hi : Rational(s.lo + width * acc / total);
        Rational slope = (arc[i].t1 - arc[i].t0) / (s1 - s0);
        Rational offset = arc[i].t0 - slope * s0;
        pieces_.push_back(AffinePiece{s.edge, s0, s1, arc[i].edge, offset, slope});
      }
    }
    edge_offsets_.assign(sp.edge_count() + 1, 0);
    for (const auto& piece : pieces_) ++edge_offsets_[piece.edge + 1];
    for (std::size_t e = 0; e < sp.edge_count(); ++e) edge_offsets_[e + 1] += edge_offsets_[e];
    by_target_.assign(sp.edge_count(), {});
    for (std::size_t i = 0; i < pieces_.size(); ++i) by_target_[pieces_[i].target].push_back(i);
  }

  std::shared_ptr<const TreeSpace> space_;
  std::vector<SegmentAction> segments_;
  std::vector<AffinePiece> pieces_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<std::vector<std::size_t>> by_target_;
};

struct PreimageComponent {
  SubtreeSet set;
  std::size_t depth = 0;
  std::size_t parent = 0;  // index into the previous level
};

/// All components of f^-n(root) for n = 0..depth. Level n+1 components are
/// the components of the preimages of level-n components.
struct BackwardTree {
  TreePoint root;
  std::vector<std::vector<PreimageComponent>> levels;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }

  /// Union of all components on levels [from, to].
  SubtreeSet union_of_levels(const TreeSpace& space, std::size_t from, std::size_t to) const {
    std::vector<Interval> parts;
    std::vector<VertexId> verts;
    for (std::size_t n = from; n <= to && n < levels.size(); ++n)
      for (const auto& c : levels[n]) {
        parts.insert(parts.end(), c.set.intervals().begin(), c.set.intervals().end());
        verts.insert(verts.end(), c.set.vertices().begin(), c.set.vertices().end());
      }
    return SubtreeSet::from_parts(space, std::move(parts), std::move(verts));
  }
};

inline constexpr std::size_t kDefaultComponentCap = 100000;

inline BackwardTree backward_tree(const PwAffineTreeMap& f, const TreePoint& p, std::size_t depth,
                                  std::size_t cap = kDefaultComponentCap) {
  const TreeSpace& space = f.space();
  BackwardTree tree;
  tree.root = space.canonical(p);
  tree.levels.push_back({PreimageComponent{SubtreeSet::point(space, tree.root), 0, 0}});
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<PreimageComponent> next;
    const auto& level = tree.levels.back();
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (auto& comp : f.preimage_set(level[i].set).components(space)) {
        next.push_back(PreimageComponent{std::move(comp), n + 1, i});
        if (next.size() > cap)
          throw BudgetExceeded("backward tree exceeded " + std::to_string(cap) + " components at level " +
                                   std::to_string(n + 1),
                               static_cast<long>(n + 1));
      }
    }
    tree.levels.push_back(std::move(next));
  }
  return tree;
}

/// Decides monotonicity exactly: point-preimage connectivity can only change
/// at images of breakpoints and vertices, so it is enough to test those
/// critical values and one value strictly between consecutive ones on each
/// edge.
inline Verdict check_monotone(const PwAffineTreeMap& f) {
  const TreeSpace& space = f.space();
  Verdict v;
  v.query = "monotone";
  v.subject = "map";
  std::vector<std::vector<Rational>> critical(space.edge_count());
  for (EdgeId e = 0; e < space.edge_count(); ++e) {
    critical[e].push_back(0);
    critical[e].push_back(1);
  }
  auto add_value = [&](const TreePoint& q) {
    if (auto w = space.vertex_at(q)) {
      for (EdgeId e : space.incident(*w)) critical[e].push_back(space.edge(e).from == *w ? Rational(0) : Rational(1));
    } else {
      critical[q.edge].push_back(q.t);
    }
  };
  for (const auto& piece : f.pieces()) {
    add_value(space.canonical(TreePoint{piece.target, piece.apply(piece.lo)}));
    add_value(space.canonical(TreePoint{piece.target, piece.apply(piece.hi)}));
  }
  std::size_t tested = 0;
  for (EdgeId e = 0; e < space.edge_count(); ++e) {
    auto& c = critical[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    // generic values first, so a witness is a typical point when one exists
    std::vector<Rational> probes;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) probes.push_back((c[i] + c[i + 1]) / 2);
    probes.insert(probes.end(), c.begin(), c.end());
    for (const auto& t : probes) {
      const TreePoint q = space.canonical(TreePoint{e, t});
      const auto comps = f.preimage(q);
      ++tested;
      if (comps.size() > 1) {
        v.outcome = Outcome::Fail;
        v.witness.points.push_back(q);
        for (const auto& comp : comps) {
          auto pts = comp.extreme_points(space);
          v.witness.points.insert(v.witness.points.end(), pts.begin(), pts.end());
        }
        v.witness.time = static_cast<std::int64_t>(comps.size());
        v.witness.note = "preimage of " + format_point(space, q) + " has " + std::to_string(comps.size()) +
                         " components";
        return v;
      }
    }
  }
  v.outcome = Outcome::Pass;
  v.witness.time = static_cast<std::int64_t>(tested);
  v.witness.note = "all " + std::to_string(tested) + " critical and intermediate values have connected preimages";
  return v;
}

struct CoreSpace {
  SubtreeSet set;      // f^n(X)
  std::size_t n = 0;
  bool stabilized = false;  // f^n(X) == f^{n+1}(X), hence equal to the core
};

inline CoreSpace core_space(const PwAffineTreeMap& f, std::size_t n) {
  const TreeSpace& space = f.space();
  SubtreeSet s = SubtreeSet::whole(space);
  for (std::size_t i = 0; i < n; ++i) s = f.image(s);
  SubtreeSet next = f.image(s);
  return CoreSpace{s, n, next == s};
}

/// f^n as elementary affine pieces, for exact periodic-point solving.
inline std::vector<AffinePiece> power_pieces(const PwAffineTreeMap& f, std::size_t n, std::size_t cap = 200000) {
  const TreeSpace& space = f.space();
  if (n == 0) {
    std::vector<AffinePiece> id;
    for (EdgeId e = 0; e < space.edge_count(); ++e) id.push_back(AffinePiece{e, 0, 1, e, 0, 1});
    return id;
  }
  std::vector<AffinePiece> current = f.pieces();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<AffinePiece> next;
    for (const auto& p : current) {
      if (p.slope == 0) {
        TreePoint img = f.evaluate(TreePoint{p.target, p.offset});
        next.push_back(AffinePiece{p.edge, p.lo, p.hi, img.edge, img.t, 0});
      } else {
        auto [m, M] = p.image_range();
        for (const auto& q : f.pieces_on(p.target)) {
          Rational lo = q.lo > m ? q.lo : m;
          Rational hi = q.hi < M ? q.hi : M;
          if (!(lo < hi)) continue;
          Rational s0 = (lo - p.offset) / p.slope, s1 = (hi - p.offset) / p.slope;
          if (s1 < s0) std::swap(s0, s1);
          next.push_back(AffinePiece{p.edge, s0, s1, q.target, q.offset + q.slope * p.offset, q.slope * p.slope});
        }
      }
      if (next.size() > cap)
        throw BudgetExceeded("composition of f^" + std::to_string(k + 1) + " exceeded " + std::to_string(cap) +
                                 " affine pieces",
                             static_cast<long>(k + 1));
    }
    std::sort(next.begin(), next.end(), [](const AffinePiece& a, const AffinePiece& b) {
      return a.edge != b.edge ? a.edge < b.edge : a.lo < b.lo;
    });
    current = std::move(next);
  }
  return current;
}

}  // namespace limitlab
