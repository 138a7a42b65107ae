#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/rational.hpp"

namespace limitlab {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  std::string name;
  VertexId from = 0;
  VertexId to = 0;
  Rational length;
};

/// Extra metric shortcut between two vertices. Links shorten distances but
/// are not part of the topology: arcs, components and maps ignore them.
struct MetricLink {
  VertexId a = 0;
  VertexId b = 0;
  Rational length;
};

/// A location on an edge; `t` runs from the edge's `from` vertex (0) to its
/// `to` vertex (1). Compare points only after TreeSpace::canonical.
struct TreePoint {
  EdgeId edge = 0;
  Rational t;

  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    return a.edge == b.edge && a.t == b.t;
  }
  friend bool operator<(const TreePoint& a, const TreePoint& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.t < b.t;
  }
};

struct TreePointHash {
  std::size_t operator()(const TreePoint& p) const {
    std::size_t h = p.edge;
    hash_combine(h, hash_rational(p.t));
    return h;
  }
};

/// Sorted, duplicate-free list of points. Canonical order makes every output
/// that iterates a set deterministic.
template <class Point>
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<Point> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  bool contains(const Point& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
};

/// A finite metric tree: the ambient space for every tree map.
class TreeSpace {
 public:
  TreeSpace() = default;

  TreeSpace(std::vector<std::string> vertex_names, std::vector<Edge> edges, VertexId root,
            std::vector<MetricLink> links = {})
      : names_(std::move(vertex_names)), edges_(std::move(edges)), root_(root), links_(std::move(links)) {
    const std::size_t n = names_.size();
    if (n == 0) throw Error(ErrorKind::MalformedSpace, "space has no vertices");
    if (root_ >= n) throw Error(ErrorKind::MalformedSpace, "root vertex out of range");
    if (edges_.size() + 1 != n)
      throw Error(ErrorKind::MalformedSpace, "a tree on " + std::to_string(n) + " vertices needs " +
                                                 std::to_string(n - 1) + " edges, got " +
                                                 std::to_string(edges_.size()));
    incident_.assign(n, {});
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.from >= n || ed.to >= n)
        throw Error(ErrorKind::MalformedSpace, "edge '" + ed.name + "' references an unknown vertex");
      if (ed.from == ed.to) throw Error(ErrorKind::MalformedSpace, "edge '" + ed.name + "' is a loop");
      if (ed.length <= 0)
        throw Error(ErrorKind::MalformedSpace, "edge '" + ed.name + "' has non-positive length");
      incident_[ed.from].push_back(e);
      incident_[ed.to].push_back(e);
    }
    for (const auto& l : links_) {
      if (l.a >= n || l.b >= n || l.a == l.b || l.length <= 0)
        throw Error(ErrorKind::MalformedSpace, "invalid metric link");
    }
    build_parents();
    build_distances();
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  VertexId root() const { return root_; }
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(v); }
  std::size_t degree(VertexId v) const { return incident_.at(v).size(); }
  const std::vector<MetricLink>& links() const { return links_; }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }
  std::optional<EdgeId> find_edge(std::string_view name) const {
    for (EdgeId e = 0; e < edges_.size(); ++e)
      if (edges_[e].name == name) return e;
    return std::nullopt;
  }

  const Rational& vertex_distance(VertexId a, VertexId b) const { return dist_[a * names_.size() + b]; }

  TreePoint vertex_point(VertexId v) const {
    const EdgeId e = *std::min_element(incident_.at(v).begin(), incident_.at(v).end());
    return TreePoint{e, edges_[e].from == v ? Rational(0) : Rational(1)};
  }

  void check_point(const TreePoint& p) const {
    if (p.edge >= edges_.size())
      throw Error(ErrorKind::MalformedPoint, "unknown edge id " + std::to_string(p.edge));
    if (p.t < 0 || p.t > 1)
      throw Error(ErrorKind::MalformedPoint, "parameter " + to_string(p.t) + " out of [0,1]");
  }

  std::optional<VertexId> vertex_at(const TreePoint& p) const {
    check_point(p);
    if (p.t == 0) return edges_[p.edge].from;
    if (p.t == 1) return edges_[p.edge].to;
    return std::nullopt;
  }

  /// Vertices are represented on their lowest-numbered incident edge.
  TreePoint canonical(const TreePoint& p) const {
    if (auto v = vertex_at(p)) return vertex_point(*v);
    return p;
  }

  bool same_point(const TreePoint& a, const TreePoint& b) const { return canonical(a) == canonical(b); }

  TreePoint point(EdgeId e, Rational t) const { return canonical(TreePoint{e, std::move(t)}); }

  /// Shortest-path distance; with no metric links this is the arc length of
  /// the unique arc joining the points.
  Rational distance(const TreePoint& a, const TreePoint& b) const {
    check_point(a);
    check_point(b);
    const Edge& ea = edges_[a.edge];
    const Edge& eb = edges_[b.edge];
    Rational best;
    bool have = false;
    if (a.edge == b.edge) {
      best = abs(Rational(a.t - b.t)) * ea.length;
      have = true;
    }
    const Rational da[2] = {a.t * ea.length, (1 - a.t) * ea.length};
    const Rational db[2] = {b.t * eb.length, (1 - b.t) * eb.length};
    const VertexId va[2] = {ea.from, ea.to};
    const VertexId vb[2] = {eb.from, eb.to};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Rational cand = da[i] + vertex_distance(va[i], vb[j]) + db[j];
        if (!have || cand < best) {
          best = cand;
          have = true;
        }
      }
    return best;
  }

  /// Distance from `p` to every vertex.
  std::vector<Rational> distances_to_vertices(const TreePoint& p) const {
    std::vector<Rational> out(names_.size());
    for (VertexId v = 0; v < names_.size(); ++v) out[v] = distance(p, vertex_point(v));
    return out;
  }

  Rational diameter() const {
    Rational best = 0;
    for (const auto& d : dist_)
      if (d > best) best = d;
    return best;
  }

  Rational total_length() const {
    Rational s = 0;
    for (const auto& e : edges_) s += e.length;
    return s;
  }

  Rational shortest_edge() const {
    Rational best = edges_.front().length;
    for (const auto& e : edges_)
      if (e.length < best) best = e.length;
    return best;
  }

  /// Vertex sequence of the topological arc from `a` to `b` (links ignored).
  std::vector<VertexId> vertex_path(VertexId a, VertexId b) const {
    std::vector<VertexId> left{a}, right{b};
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        a = parent_[a];
        left.push_back(a);
      } else {
        b = parent_[b];
        right.push_back(b);
      }
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
  }

  /// Edge joining two adjacent vertices.
  EdgeId edge_between(VertexId a, VertexId b) const {
    for (EdgeId e : incident_.at(a)) {
      const Edge& ed = edges_[e];
      if ((ed.from == a && ed.to == b) || (ed.from == b && ed.to == a)) return e;
    }
    throw Error(ErrorKind::InvalidArgument, "vertices are not adjacent");
  }

 private:
  void build_parents() {
    const std::size_t n = names_.size();
    parent_.assign(n, n);
    depth_.assign(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<VertexId> stack{root_};
    seen[root_] = true;
    parent_[root_] = root_;
    std::size_t visited = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++visited;
      for (EdgeId e : incident_[v]) {
        VertexId w = edges_[e].from == v ? edges_[e].to : edges_[e].from;
        if (seen[w]) continue;
        seen[w] = true;
        parent_[w] = v;
        depth_[w] = depth_[v] + 1;
        stack.push_back(w);
      }
    }
    if (visited != n) throw Error(ErrorKind::MalformedSpace, "edge graph is not connected");
  }

  void build_distances() {
    const std::size_t n = names_.size();
    // adjacency: tree edges plus links
    std::vector<std::vector<std::pair<VertexId, Rational>>> adj(n);
    for (const auto& e : edges_) {
      adj[e.from].emplace_back(e.to, e.length);
      adj[e.to].emplace_back(e.from, e.length);
    }
    for (const auto& l : links_) {
      adj[l.a].emplace_back(l.b, l.length);
      adj[l.b].emplace_back(l.a, l.length);
    }
    dist_.assign(n * n, Rational(0));
    for (VertexId s = 0; s < n; ++s) {
      std::vector<Rational> d(n);
      std::vector<bool> known(n, false), done(n, false);
      d[s] = 0;
      known[s] = true;
      for (std::size_t iter = 0; iter < n; ++iter) {
        VertexId best = n;
        for (VertexId v = 0; v < n; ++v)
          if (known[v] && !done[v] && (best == n || d[v] < d[best])) best = v;
        if (best == n) break;
        done[best] = true;
        for (const auto& [w, len] : adj[best]) {
          Rational cand = d[best] + len;
          if (!known[w] || cand < d[w]) {
            d[w] = cand;
            known[w] = true;
          }
        }
      }
      for (VertexId v = 0; v < n; ++v) dist_[s * n + v] = d[v];
    }
  }

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  VertexId root_ = 0;
  std::vector<MetricLink> links_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexId> parent_;
  std::vector<std::size_t> depth_;
  std::vector<Rational> dist_;
};

using TreePointSet = FiniteSet<TreePoint>;

inline TreePointSet make_point_set(const TreeSpace& space, std::vector<TreePoint> points) {
  for (auto& p : points) p = space.canonical(p);
  return TreePointSet(std::move(points));
}

/// Closed interval [lo, hi] of parameters on one edge.
struct Interval {
  EdgeId edge = 0;
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.edge == b.edge && a.lo == b.lo && a.hi == b.hi;
  }
};

/// A closed subset of the tree made of finitely many edge intervals and
/// vertices. Stored in a normal form so equality is structural: intervals
/// are per-edge sorted, merged, and any vertex they touch is listed in
/// `vertices()`.
class SubtreeSet {
 public:
  SubtreeSet() = default;

  static SubtreeSet from_parts(const TreeSpace& space, std::vector<Interval> parts,
                               std::vector<VertexId> vertices = {}) {
    SubtreeSet s;
    s.vertices_ = std::move(vertices);
    std::vector<Interval> kept;
    kept.reserve(parts.size());
    for (auto& iv : parts) {
      if (iv.edge >= space.edge_count())
        throw Error(ErrorKind::MalformedPoint, "unknown edge id " + std::to_string(iv.edge));
      if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
      if (iv.lo < 0 || iv.hi > 1)
        throw Error(ErrorKind::MalformedPoint, "interval out of [0,1] on edge " + space.edge(iv.edge).name);
      const Edge& ed = space.edge(iv.edge);
      if (iv.lo == 0) s.vertices_.push_back(ed.from);
      if (iv.hi == 1) s.vertices_.push_back(ed.to);
      if (iv.lo == iv.hi && (iv.lo == 0 || iv.lo == 1)) continue;
      kept.push_back(std::move(iv));
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
      return a.edge != b.edge ? a.edge < b.edge : a.lo < b.lo;
    });
    for (auto& iv : kept) {
      if (!s.intervals_.empty() && s.intervals_.back().edge == iv.edge && iv.lo <= s.intervals_.back().hi) {
        if (iv.hi > s.intervals_.back().hi) s.intervals_.back().hi = iv.hi;
      } else {
        s.intervals_.push_back(std::move(iv));
      }
    }
    std::sort(s.vertices_.begin(), s.vertices_.end());
    s.vertices_.erase(std::unique(s.vertices_.begin(), s.vertices_.end()), s.vertices_.end());
    return s;
  }

  static SubtreeSet point(const TreeSpace& space, const TreePoint& p) {
    if (auto v = space.vertex_at(p)) return from_parts(space, {}, {*v});
    return from_parts(space, {Interval{p.edge, p.t, p.t}});
  }

  static SubtreeSet whole(const TreeSpace& space) {
    std::vector<Interval> parts;
    for (EdgeId e = 0; e < space.edge_count(); ++e) parts.push_back(Interval{e, 0, 1});
    return from_parts(space, std::move(parts));
  }

  bool empty() const { return intervals_.empty() && vertices_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  bool has_vertex(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  /// Parameter intervals present on edge `e`, including degenerate ones for
  /// member vertices at its ends.
  std::vector<std::pair<Rational, Rational>> on_edge(const TreeSpace& space, EdgeId e) const {
    std::vector<std::pair<Rational, Rational>> out;
    const Edge& ed = space.edge(e);
    if (has_vertex(ed.from)) out.emplace_back(Rational(0), Rational(0));
    auto [first, last] = edge_range(e);
    for (auto it = first; it != last; ++it) out.emplace_back(it->lo, it->hi);
    if (has_vertex(ed.to)) out.emplace_back(Rational(1), Rational(1));
    return out;
  }

  bool contains(const TreeSpace& space, const TreePoint& p) const {
    if (auto v = space.vertex_at(p)) return has_vertex(*v);
    auto [first, last] = edge_range(p.edge);
    for (auto it = first; it != last; ++it)
      if (it->lo <= p.t && p.t <= it->hi) return true;
    return false;
  }

  bool intersects(const SubtreeSet& other) const {
    {
      auto a = vertices_.begin(), b = other.vertices_.begin();
      while (a != vertices_.end() && b != other.vertices_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
      }
    }
    std::size_t i = 0, j = 0;
    while (i < intervals_.size() && j < other.intervals_.size()) {
      const Interval& x = intervals_[i];
      const Interval& y = other.intervals_[j];
      if (x.edge != y.edge) {
        if (x.edge < y.edge) ++i; else ++j;
        continue;
      }
      if (x.lo <= y.hi && y.lo <= x.hi) return true;
      if (x.hi < y.hi) ++i; else ++j;
    }
    return false;
  }

  bool subset_of(const SubtreeSet& other) const {
    for (VertexId v : vertices_)
      if (!other.has_vertex(v)) return false;
    for (const auto& iv : intervals_) {
      auto [first, last] = other.edge_range(iv.edge);
      bool inside = false;
      for (auto it = first; it != last && !inside; ++it) inside = it->lo <= iv.lo && iv.hi <= it->hi;
      if (!inside) return false;
    }
    return true;
  }

  SubtreeSet unite(const TreeSpace& space, const SubtreeSet& other) const {
    std::vector<Interval> parts = intervals_;
    parts.insert(parts.end(), other.intervals_.begin(), other.intervals_.end());
    std::vector<VertexId> verts = vertices_;
    verts.insert(verts.end(), other.vertices_.begin(), other.vertices_.end());
    return from_parts(space, std::move(parts), std::move(verts));
  }

  /// Maximal connected pieces, ordered by their first member.
  std::vector<SubtreeSet> components(const TreeSpace& space) const {
    const std::size_t ni = intervals_.size(), nv = vertices_.size();
    std::vector<std::size_t> parent(ni + nv);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto vindex = [&](VertexId v) {
      return ni + static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
    };
    for (std::size_t i = 0; i < ni; ++i) {
      const Edge& ed = space.edge(intervals_[i].edge);
      if (intervals_[i].lo == 0) parent[find(i)] = find(vindex(ed.from));
      if (intervals_[i].hi == 1) parent[find(i)] = find(vindex(ed.to));
    }
    // vertices joined directly by a fully covered edge are already linked via
    // that edge's interval; nothing else connects distinct items.
    std::vector<std::size_t> order;
    std::vector<std::vector<Interval>> comp_iv;
    std::vector<std::vector<VertexId>> comp_v;
    std::vector<std::size_t> slot(ni + nv, static_cast<std::size_t>(-1));
    auto slot_of = [&](std::size_t item) {
      std::size_t r = find(item);
      if (slot[r] == static_cast<std::size_t>(-1)) {
        slot[r] = comp_iv.size();
        comp_iv.emplace_back();
        comp_v.emplace_back();
      }
      return slot[r];
    };
    for (std::size_t j = 0; j < nv; ++j) comp_v[slot_of(ni + j)].push_back(vertices_[j]);
    for (std::size_t i = 0; i < ni; ++i) comp_iv[slot_of(i)].push_back(intervals_[i]);
    std::vector<SubtreeSet> out;
    out.reserve(comp_iv.size());
    for (std::size_t c = 0; c < comp_iv.size(); ++c) {
      SubtreeSet s;
      s.intervals_ = std::move(comp_iv[c]);
      s.vertices_ = std::move(comp_v[c]);
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [&](const SubtreeSet& a, const SubtreeSet& b) {
      return a.first_point(space) < b.first_point(space);
    });
    return out;
  }

  /// Interval endpoints and vertices, canonical and sorted.
  std::vector<TreePoint> extreme_points(const TreeSpace& space) const {
    std::vector<TreePoint> pts;
    for (VertexId v : vertices_) pts.push_back(space.vertex_point(v));
    for (const auto& iv : intervals_) {
      pts.push_back(space.canonical(TreePoint{iv.edge, iv.lo}));
      pts.push_back(space.canonical(TreePoint{iv.edge, iv.hi}));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  TreePoint first_point(const TreeSpace& space) const {
    auto pts = extreme_points(space);
    if (pts.empty()) throw Error(ErrorKind::EmptySet, "empty subtree set");
    return pts.front();
  }

  /// Points on the per-edge lattice t = k/n_e (n_e = ceil(length/pitch))
  /// that fall inside the set, plus every extreme point. Every point of the
  /// set lies within pitch/2 of the result.
  std::vector<TreePoint> sample(const TreeSpace& space, const Rational& pitch) const {
    std::vector<TreePoint> pts = extreme_points(space);
    for (const auto& iv : intervals_) {
      if (iv.lo == iv.hi) continue;
      const mpz_class n = lattice_size(space.edge(iv.edge).length, pitch);
      Rational lo_k = iv.lo * n;
      mpz_class k;
      mpz_cdiv_q(k.get_mpz_t(), lo_k.get_num().get_mpz_t(), lo_k.get_den().get_mpz_t());
      for (;; ++k) {
        Rational t(k, n);
        t.canonicalize();
        if (t > iv.hi) break;
        pts.push_back(space.canonical(TreePoint{iv.edge, t}));
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  static mpz_class lattice_size(const Rational& length, const Rational& pitch) {
    Rational q = length / pitch;
    mpz_class n;
    mpz_cdiv_q(n.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return n < 1 ? mpz_class(1) : n;
  }

  std::size_t hash() const {
    std::size_t h = vertices_.size();
    for (VertexId v : vertices_) hash_combine(h, v);
    for (const auto& iv : intervals_) {
      hash_combine(h, iv.edge);
      hash_combine(h, hash_rational(iv.lo));
      hash_combine(h, hash_rational(iv.hi));
    }
    return h;
  }

  friend bool operator==(const SubtreeSet& a, const SubtreeSet& b) {
    return a.vertices_ == b.vertices_ && a.intervals_ == b.intervals_;
  }

 private:
  std::pair<std::vector<Interval>::const_iterator, std::vector<Interval>::const_iterator> edge_range(EdgeId e) const {
    auto first = std::lower_bound(intervals_.begin(), intervals_.end(), e,
                                  [](const Interval& iv, EdgeId x) { return iv.edge < x; });
    auto last = std::upper_bound(first, intervals_.end(), e,
                                 [](EdgeId x, const Interval& iv) { return x < iv.edge; });
    return {first, last};
  }

  std::vector<Interval> intervals_;
  std::vector<VertexId> vertices_;
};

/// Largest pairwise distance among a connected set's extreme points.
inline Rational component_diameter(const TreeSpace& space, const SubtreeSet& component) {
  const auto pts = component.extreme_points(space);
  Rational best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Rational d = space.distance(pts[i], pts[j]);
      if (d > best) best = d;
    }
  return best;
}

/// Supremum of the diameters of the connected components; 0 for the empty set.
inline Rational mesh(const TreeSpace& space, const SubtreeSet& set) {
  Rational best = 0;
  for (const auto& c : set.components(space)) {
    Rational d = component_diameter(space, c);
    if (d > best) best = d;
  }
  return best;
}

struct Ball {
  SubtreeSet set;
  std::vector<TreePoint> boundary;
};

/// Closed metric ball. The boundary lists the points of the ball that are
/// limits of points outside it; on a tree this is always finite.
inline Ball ball(const TreeSpace& space, const TreePoint& center, const Rational& radius) {
  if (radius <= 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
  const TreePoint p = space.canonical(center);
  const auto dv = space.distances_to_vertices(p);
  std::vector<Interval> parts;
  for (EdgeId e = 0; e < space.edge_count(); ++e) {
    const Edge& ed = space.edge(e);
    const Rational& du = dv[ed.from];
    const Rational& dw = dv[ed.to];
    if (du <= radius) parts.push_back(Interval{e, 0, min(Rational(1), Rational((radius - du) / ed.length))});
    if (dw <= radius) parts.push_back(Interval{e, max(Rational(0), Rational(1 - (radius - dw) / ed.length)), 1});
    if (p.edge == e) {
      Rational span = radius / ed.length;
      parts.push_back(Interval{e, max(Rational(0), Rational(p.t - span)), min(Rational(1), Rational(p.t + span))});
    }
  }
  Ball b;
  b.set = SubtreeSet::from_parts(space, std::move(parts));
  for (const auto& iv : b.set.intervals()) {
    if (iv.lo > 0) b.boundary.push_back(TreePoint{iv.edge, iv.lo});
    if (iv.hi < 1) b.boundary.push_back(TreePoint{iv.edge, iv.hi});
  }
  for (VertexId v : b.set.vertices()) {
    bool open_side = false;
    for (EdgeId e : space.incident(v)) {
      const Edge& ed = space.edge(e);
      bool covered = false;
      for (const auto& [lo, hi] : b.set.on_edge(space, e)) {
        if (lo == hi) continue;
        if ((ed.from == v && lo == 0) || (ed.to == v && hi == 1)) covered = true;
      }
      if (!covered) open_side = true;
    }
    if (open_side) b.boundary.push_back(space.vertex_point(v));
  }
  for (auto& q : b.boundary) q = space.canonical(q);
  std::sort(b.boundary.begin(), b.boundary.end());
  b.boundary.erase(std::unique(b.boundary.begin(), b.boundary.end()), b.boundary.end());
  return b;
}

/// Exact nearest-point queries against a fixed point set: per-edge sorted
/// parameters plus a multi-source shortest-path pass over the vertices.
class NearestPointIndex {
 public:
  NearestPointIndex(const TreeSpace& space, std::span<const TreePoint> targets) : space_(&space) {
    if (targets.empty()) throw Error(ErrorKind::EmptySet, "nearest-point index over an empty set");
    per_edge_.assign(space.edge_count(), {});
    const std::size_t n = space.vertex_count();
    via_vertex_.assign(n, Rational(0));
    std::vector<bool> known(n, false);
    for (const auto& raw : targets) {
      const TreePoint p = space.canonical(raw);
      if (auto v = space.vertex_at(p)) {
        via_vertex_[*v] = 0;
        known[*v] = true;
        for (EdgeId e : space.incident(*v))
          per_edge_[e].push_back(space.edge(e).from == *v ? Rational(0) : Rational(1));
      } else {
        per_edge_[p.edge].push_back(p.t);
      }
    }
    for (auto& ts : per_edge_) {
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    }
    for (EdgeId e = 0; e < space.edge_count(); ++e) {
      const auto& ts = per_edge_[e];
      if (ts.empty()) continue;
      const Edge& ed = space.edge(e);
      relax(known, ed.from, ts.front() * ed.length);
      relax(known, ed.to, (1 - ts.back()) * ed.length);
    }
    std::vector<std::vector<std::pair<VertexId, const Rational*>>> adj(n);
    for (const auto& ed : space.edges()) {
      adj[ed.from].emplace_back(ed.to, &ed.length);
      adj[ed.to].emplace_back(ed.from, &ed.length);
    }
    for (const auto& l : space.links()) {
      adj[l.a].emplace_back(l.b, &l.length);
      adj[l.b].emplace_back(l.a, &l.length);
    }
    std::vector<bool> done(n, false);
    for (std::size_t iter = 0; iter < n; ++iter) {
      VertexId best = n;
      for (VertexId v = 0; v < n; ++v)
        if (known[v] && !done[v] && (best == n || via_vertex_[v] < via_vertex_[best])) best = v;
      if (best == n) break;
      done[best] = true;
      for (const auto& [w, len] : adj[best]) relax(known, w, via_vertex_[best] + *len);
    }
  }

  Rational distance(const TreePoint& raw) const {
    const TreePoint p = space_->canonical(raw);
    const Edge& ed = space_->edge(p.edge);
    Rational best = p.t * ed.length + via_vertex_[ed.from];
    Rational other = (1 - p.t) * ed.length + via_vertex_[ed.to];
    if (other < best) best = other;
    const auto& ts = per_edge_[p.edge];
    auto it = std::lower_bound(ts.begin(), ts.end(), p.t);
    if (it != ts.end()) {
      Rational d = (*it - p.t) * ed.length;
      if (d < best) best = d;
    }
    if (it != ts.begin()) {
      Rational d = (p.t - *std::prev(it)) * ed.length;
      if (d < best) best = d;
    }
    return best;
  }

 private:
  void relax(std::vector<bool>& known, VertexId v, const Rational& d) {
    if (!known[v] || d < via_vertex_[v]) {
      via_vertex_[v] = d;
      known[v] = true;
    }
  }

  const TreeSpace* space_;
  std::vector<std::vector<Rational>> per_edge_;
  std::vector<Rational> via_vertex_;
};

/// Directed distance sup_{a in A} d(a, B).
inline Rational directed_hausdorff(const TreeSpace& space, std::span<const TreePoint> a,
                                   std::span<const TreePoint> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "Hausdorff distance of an empty set");
  NearestPointIndex index(space, b);
  Rational best = 0;
  for (const auto& p : a) {
    Rational d = index.distance(p);
    if (d > best) best = d;
  }
  return best;
}

inline Rational hausdorff_distance(const TreeSpace& space, std::span<const TreePoint> a,
                                   std::span<const TreePoint> b) {
  return max(directed_hausdorff(space, a, b), directed_hausdorff(space, b, a));
}

inline Rational hausdorff_distance(const TreeSpace& space, const TreePointSet& a, const TreePointSet& b) {
  return hausdorff_distance(space, std::span<const TreePoint>(a.points()), std::span<const TreePoint>(b.points()));
}

/// Distance from a point to a finite set (throws on an empty set).
inline Rational distance_to_set(const TreeSpace& space, const TreePoint& p, std::span<const TreePoint> set) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "distance to an empty set");
  Rational best = space.distance(p, set.front());
  for (const auto& q : set.subspan(1)) {
    Rational d = space.distance(p, q);
    if (d < best) best = d;
  }
  return best;
}

/// Brute-force Hausdorff distance for any metric; used for symbolic sets and
/// as an independent check of the indexed tree version.
template <class Point, class Metric>
Rational hausdorff_distance_brute(std::span<const Point> a, std::span<const Point> b, Metric&& d) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySet, "Hausdorff distance of an empty set");
  auto directed = [&](std::span<const Point> x, std::span<const Point> y) {
    Rational sup = 0;
    for (const auto& p : x) {
      Rational inf = d(p, y.front());
      for (const auto& q : y.subspan(1)) {
        Rational c = d(p, q);
        if (c < inf) inf = c;
      }
      if (inf > sup) sup = inf;
    }
    return sup;
  };
  return max(directed(a, b), directed(b, a));
}

/// Keeps a point only when it is farther than `radius` from the previously
/// kept point on the same edge. The result is within `radius` of the input.
inline std::vector<TreePoint> thin_along_edges(const TreeSpace& space, std::vector<TreePoint> pts,
                                               const Rational& radius) {
  std::sort(pts.begin(), pts.end());
  std::vector<TreePoint> out;
  for (auto& p : pts) {
    if (!out.empty() && out.back().edge == p.edge &&
        (p.t - out.back().t) * space.edge(p.edge).length <= radius)
      continue;
    out.push_back(std::move(p));
  }
  return out;
}

inline std::string format_point(const TreeSpace& space, const TreePoint& p) {
  return space.edge(p.edge).name + ":" + to_string(p.t);
}

}  // namespace limitlab
