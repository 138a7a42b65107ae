#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/error.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/systems.hpp"

// One declaration per line, '#' starts a comment:
//
//   vertex NAME
//   edge NAME FROM TO LENGTH
//   link V1 V2 LENGTH
//   root V
//   segment EDGE LO HI -> POINT POINT
//   example NAME[:PARAMS]
//
// POINT is EDGE:P/Q or a vertex name. A segment maps [LO, HI] on EDGE
// affinely along the arc between the two image points.

namespace limitlab {

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column) + ": " + message; }
};

struct SegmentDecl {
  std::string edge;
  Rational lo;
  Rational hi;
  std::string from;  // POINT as written
  std::string to;
  std::size_t line = 0;

  friend bool operator==(const SegmentDecl& a, const SegmentDecl& b) {
    return a.edge == b.edge && a.lo == b.lo && a.hi == b.hi && a.from == b.from && a.to == b.to;
  }
};

struct EdgeDecl {
  std::string name;
  std::string from;
  std::string to;
  Rational length;
  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

struct LinkDecl {
  std::string a;
  std::string b;
  Rational length;
  friend bool operator==(const LinkDecl&, const LinkDecl&) = default;
};

/// A parsed system document: either an example reference or an explicit
/// tree with its map.
struct SystemDescription {
  std::optional<std::string> example;
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::vector<LinkDecl> links;
  std::optional<std::string> root;
  std::vector<SegmentDecl> segments;

  friend bool operator==(const SystemDescription&, const SystemDescription&) = default;
};

struct ParseResult {
  std::optional<SystemDescription> description;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return description.has_value() && diagnostics.empty(); }
};

/// `EDGE:P/Q` or a vertex name, resolved against `space`.
inline TreePoint parse_point(const TreeSpace& space, const std::string& text) {
  if (auto colon = text.rfind(':'); colon != std::string::npos) {
    const auto e = space.find_edge(text.substr(0, colon));
    if (!e) throw Error(ErrorKind::MalformedPoint, "unknown edge '" + text.substr(0, colon) + "'");
    const Rational t = parse_rational(text.substr(colon + 1));
    if (t < 0 || t > 1) throw Error(ErrorKind::MalformedPoint, "parameter out of [0,1] in '" + text + "'");
    return space.canonical(TreePoint{*e, t});
  }
  if (auto v = space.find_vertex(text)) return space.vertex_point(*v);
  throw Error(ErrorKind::MalformedPoint, "unknown point '" + text + "' (expected EDGE:P/Q or a vertex name)");
}

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace detail

/// Builds the map of an explicit description; example references go
/// through build_example.
inline ExampleSystem to_system(const SystemDescription& d) {
  if (d.example) return build_example(*d.example);
  std::vector<std::string> names = d.vertices;
  auto vertex = [&](const std::string& n) {
    const auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw Error(ErrorKind::MalformedSpace, "unknown vertex '" + n + "'");
    return static_cast<VertexId>(it - names.begin());
  };
  std::vector<Edge> edges;
  for (const auto& e : d.edges) edges.push_back(Edge{e.name, vertex(e.from), vertex(e.to), e.length});
  std::vector<MetricLink> links;
  for (const auto& l : d.links) links.push_back(MetricLink{vertex(l.a), vertex(l.b), l.length});
  const VertexId root = d.root ? vertex(*d.root) : 0;
  auto space = std::make_shared<const TreeSpace>(names, std::move(edges), root, std::move(links));
  std::vector<SegmentAction> segs;
  for (const auto& s : d.segments)
    segs.push_back(SegmentAction{*space->find_edge(s.edge), s.lo, s.hi, parse_point(*space, s.from),
                                 parse_point(*space, s.to)});
  ExampleSystem ex{"custom", PwAffineTreeMap(space, std::move(segs)), {}};
  ex.landmarks.emplace_back(space->vertex_name(root), space->vertex_point(root));
  return ex;
}

/// Parses a document. Syntax and reference errors are collected with their
/// line and column; structural checks (contiguity, continuity, tree shape)
/// run when the syntax is clean.
inline ParseResult parse_system(const std::string& text) {
  ParseResult result;
  SystemDescription d;
  auto& diags = result.diagnostics;
  auto report = [&](std::size_t line, std::size_t col, std::string msg) {
    diags.push_back(Diagnostic{line, col, std::move(msg)});
  };
  std::map<std::string, std::size_t> vertex_line, edge_line;
  std::size_t example_line = 0, first_decl_line = 0, last_line = 0;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t ln = 1; std::getline(in, raw); ++ln) {
    last_line = ln;
    const auto tok = detail::tokenize(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    auto arity = [&](std::size_t n, const char* shape) {
      if (tok.size() == n) return true;
      report(ln, tok[0].column, "expected '" + std::string(shape) + "'");
      return false;
    };
    auto number = [&](const detail::Token& t, Rational& out) {
      try {
        out = parse_rational(t.text);
        return true;
      } catch (const Error& e) {
        report(ln, t.column, e.what());
        return false;
      }
    };
    auto known_vertex = [&](const detail::Token& t) {
      if (vertex_line.count(t.text)) return true;
      report(ln, t.column, "unknown vertex '" + t.text + "'");
      return false;
    };
    auto point = [&](const detail::Token& t) {
      const auto colon = t.text.rfind(':');
      if (colon == std::string::npos) return known_vertex(t);
      const std::string e = t.text.substr(0, colon);
      if (!edge_line.count(e)) {
        report(ln, t.column, "unknown edge '" + e + "'");
        return false;
      }
      Rational s;
      detail::Token param{t.text.substr(colon + 1), t.column + colon + 1};
      if (!number(param, s)) return false;
      if (s < 0 || s > 1) {
        report(ln, param.column, "parameter out of [0,1]");
        return false;
      }
      return true;
    };
    if (kw != "example" && !first_decl_line) first_decl_line = ln;
    if (kw == "vertex") {
      if (!arity(2, "vertex NAME")) continue;
      if (vertex_line.count(tok[1].text)) {
        report(ln, tok[1].column, "duplicate vertex '" + tok[1].text + "'");
        continue;
      }
      vertex_line[tok[1].text] = ln;
      d.vertices.push_back(tok[1].text);
    } else if (kw == "edge") {
      if (!arity(5, "edge NAME FROM TO LENGTH")) continue;
      bool ok = known_vertex(tok[2]) & known_vertex(tok[3]);
      Rational len;
      if (!number(tok[4], len)) ok = false;
      else if (len <= 0) {
        report(ln, tok[4].column, "negative or zero length");
        ok = false;
      }
      if (edge_line.count(tok[1].text) || vertex_line.count(tok[1].text)) {
        report(ln, tok[1].column, "duplicate name '" + tok[1].text + "'");
        ok = false;
      }
      if (!ok) continue;
      edge_line[tok[1].text] = ln;
      d.edges.push_back(EdgeDecl{tok[1].text, tok[2].text, tok[3].text, len});
    } else if (kw == "link") {
      if (!arity(4, "link V1 V2 LENGTH")) continue;
      bool ok = known_vertex(tok[1]) & known_vertex(tok[2]);
      Rational len;
      if (!number(tok[3], len)) ok = false;
      else if (len <= 0) {
        report(ln, tok[3].column, "negative or zero length");
        ok = false;
      }
      if (ok) d.links.push_back(LinkDecl{tok[1].text, tok[2].text, len});
    } else if (kw == "root") {
      if (!arity(2, "root V")) continue;
      if (known_vertex(tok[1])) d.root = tok[1].text;
    } else if (kw == "segment") {
      if (!arity(7, "segment EDGE LO HI -> POINT POINT")) continue;
      bool ok = true;
      if (!edge_line.count(tok[1].text)) {
        report(ln, tok[1].column, "unknown edge '" + tok[1].text + "'");
        ok = false;
      }
      Rational lo, hi;
      for (auto [t, v] : {std::pair{&tok[2], &lo}, std::pair{&tok[3], &hi}}) {
        if (!number(*t, *v)) ok = false;
        else if (*v < 0 || *v > 1) {
          report(ln, t->column, "parameter out of [0,1]");
          ok = false;
        }
      }
      if (ok && !(lo < hi)) {
        report(ln, tok[3].column, "empty segment: LO must be below HI");
        ok = false;
      }
      if (tok[4].text != "->") {
        report(ln, tok[4].column, "expected '->'");
        ok = false;
      }
      ok = point(tok[5]) && ok;
      ok = point(tok[6]) && ok;
      if (ok) d.segments.push_back(SegmentDecl{tok[1].text, lo, hi, tok[5].text, tok[6].text, ln});
    } else if (kw == "example") {
      if (!arity(2, "example NAME[:PARAMS]")) continue;
      if (d.example) {
        report(ln, tok[0].column, "more than one example");
        continue;
      }
      example_line = ln;
      d.example = tok[1].text;
    } else {
      report(ln, tok[0].column, "unknown declaration '" + kw + "'");
    }
  }
  if (d.example) {
    if (first_decl_line) report(first_decl_line, 1, "example cannot be combined with declarations");
    if (d.example != "shift") {
      try {
        build_example(*d.example);
      } catch (const Error& e) {
        report(example_line, 9, e.what());
      }
    }
  } else if (d.vertices.empty() && d.edges.empty() && diags.empty()) {
    report(last_line ? last_line : 1, 1, "no space declared");
  }
  if (diags.empty() && !d.example) {
    if (d.segments.empty()) report(last_line, 1, "no segments declared");
    // per-edge contiguity and continuity, with the offending line
    std::map<std::string, std::vector<const SegmentDecl*>> by_edge;
    for (const auto& s : d.segments) by_edge[s.edge].push_back(&s);
    for (const auto& e : d.edges) {
      auto it = by_edge.find(e.name);
      if (it == by_edge.end()) {
        report(edge_line[e.name], 1, "no segments on edge '" + e.name + "'");
        continue;
      }
      auto segs = it->second;
      std::sort(segs.begin(), segs.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
      if (segs.front()->lo != 0) report(segs.front()->line, 1, "non-contiguous breakpoints on edge '" + e.name + "'");
      if (segs.back()->hi != 1) report(segs.back()->line, 1, "non-contiguous breakpoints on edge '" + e.name + "'");
      for (std::size_t i = 1; i < segs.size(); ++i)
        if (segs[i]->lo != segs[i - 1]->hi)
          report(segs[i]->line, 1, "non-contiguous breakpoints on edge '" + e.name + "'");
    }
  }
  if (diags.empty() && !d.example) {
    try {
      // the structural checks of the space and map constructors
      (void)to_system(d);
    } catch (const Error& e) {
      std::size_t line = d.segments.empty() ? last_line : d.segments.front().line;
      const std::string msg = e.what();
      for (const auto& s : d.segments)
        if (msg.find("'" + s.edge + "'") != std::string::npos) { line = s.line; break; }
      if (e.kind() == ErrorKind::MalformedSpace) line = first_decl_line;
      report(line, 1, msg);
    }
  }
  if (diags.empty()) result.description = std::move(d);
  return result;
}

/// Canonical text of a description; parse_system(print_system(d)) == d.
inline std::string print_system(const SystemDescription& d) {
  std::ostringstream out;
  if (d.example) {
    out << "example " << *d.example << "\n";
    return out.str();
  }
  for (const auto& v : d.vertices) out << "vertex " << v << "\n";
  if (d.root) out << "root " << *d.root << "\n";
  for (const auto& e : d.edges) out << "edge " << e.name << " " << e.from << " " << e.to << " " << to_string(e.length) << "\n";
  for (const auto& l : d.links) out << "link " << l.a << " " << l.b << " " << to_string(l.length) << "\n";
  for (const auto& s : d.segments)
    out << "segment " << s.edge << " " << to_string(s.lo) << " " << to_string(s.hi) << " -> " << s.from << " " << s.to
        << "\n";
  return out.str();
}

/// Description of an existing map, points written as EDGE:P/Q.
inline SystemDescription describe(const PwAffineTreeMap& f) {
  const TreeSpace& space = f.space();
  SystemDescription d;
  d.vertices = space.vertex_names();
  d.root = space.vertex_name(space.root());
  for (const auto& e : space.edges())
    d.edges.push_back(EdgeDecl{e.name, space.vertex_name(e.from), space.vertex_name(e.to), e.length});
  for (const auto& l : space.links()) d.links.push_back(LinkDecl{space.vertex_name(l.a), space.vertex_name(l.b), l.length});
  for (const auto& s : f.segments())
    d.segments.push_back(SegmentDecl{space.edge(s.edge).name, s.lo, s.hi, format_point(space, s.from),
                                     format_point(space, s.to), 0});
  return d;
}

}  // namespace limitlab
