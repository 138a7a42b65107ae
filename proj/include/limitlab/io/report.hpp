#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "limitlab/classify.hpp"
#include "limitlab/error.hpp"
#include "limitlab/limits.hpp"
#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"
#include "limitlab/symbolic.hpp"
#include "limitlab/verdict.hpp"
#include "limitlab/verify.hpp"

namespace limitlab::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1";

inline json rational_json(const Rational& r) { return json{{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

/// Position along the edges laid end to end in declaration order.
inline Rational unfolded_coordinate(const TreeSpace& space, const TreePoint& p) {
  Rational offset = 0;
  for (EdgeId e = 0; e < p.edge; ++e) offset += space.edge(e).length;
  return offset + p.t * space.edge(p.edge).length;
}

inline json point_json(const TreeSpace& space, const TreePoint& p) {
  json j{{"label", format_point(space, p)},
         {"edge", space.edge(p.edge).name},
         {"edge_id", p.edge},
         {"t", rational_json(p.t)},
         {"coordinate", rational_json(unfolded_coordinate(space, p))}};
  if (auto v = space.vertex_at(p)) j["vertex"] = space.vertex_name(*v);
  return j;
}

inline json points_json(const TreeSpace& space, std::span<const TreePoint> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(point_json(space, p));
  return arr;
}

inline json budgets_json(const std::vector<std::pair<std::string, std::int64_t>>& budgets) {
  json j = json::object();
  for (const auto& [k, v] : budgets) j[k] = v;
  return j;
}

template <class Point, class PointToJson>
json approx_json(const SetApprox<Point>& a, PointToJson&& to_json) {
  json pts = json::array();
  for (const auto& p : a.points) pts.push_back(to_json(p));
  json j{{"kind", to_string(a.kind)},
         {"epsilon", rational_json(a.epsilon)},
         {"budgets", budgets_json(a.budgets)},
         {"exact", a.exact},
         {"converged", a.converged},
         {"size", a.points.size()},
         {"points", std::move(pts)},
         {"note", a.note}};
  if (!a.negative_orbit.empty()) {
    json orbit = json::array();
    for (const auto& p : a.negative_orbit) orbit.push_back(to_json(p));
    j["negative_orbit"] = std::move(orbit);
  }
  return j;
}

inline json approx_json(const TreeSpace& space, const TreeSetApprox& a) {
  return approx_json(a, [&](const TreePoint& p) { return point_json(space, p); });
}

inline json approx_json(const SymbolicSetApprox& a) {
  return approx_json(a, [](const SymbolicPoint& p) { return json{{"label", p.to_string()}}; });
}

inline json verdict_json(const TreeSpace& space, const Verdict& v) {
  json w{{"note", v.witness.note}, {"points", points_json(space, v.witness.points)}};
  if (v.witness.time) w["time"] = *v.witness.time;
  if (v.witness.distance) w["distance"] = rational_json(*v.witness.distance);
  json j{{"query", v.query},
         {"subject", v.subject},
         {"outcome", to_string(v.outcome)},
         {"budget_relative", v.budget_relative},
         {"budgets", budgets_json(v.budgets)},
         {"witness", std::move(w)}};
  if (v.epsilon) j["epsilon"] = rational_json(*v.epsilon);
  return j;
}

inline json periodic_json(const TreeSpace& space, const PeriodicPoints& pp) {
  json orbits = json::array();
  for (const auto& o : pp.orbits)
    orbits.push_back(json{{"period", o.period}, {"base", point_json(space, o.base)}, {"points", points_json(space, o.points)}});
  json intervals = json::array();
  for (const auto& iv : pp.intervals)
    intervals.push_back(json{{"edge", space.edge(iv.edge).name},
                             {"lo", rational_json(iv.lo)},
                             {"hi", rational_json(iv.hi)},
                             {"period", iv.period}});
  return json{{"orbits", std::move(orbits)}, {"intervals", std::move(intervals)}};
}

inline json suite_json(const TreeSpace& space, const SuiteReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json verdicts = json::array();
    for (const auto& v : s.verdicts) verdicts.push_back(verdict_json(space, v));
    samples.push_back(json{{"point", point_json(space, s.point)},
                           {"outcome", to_string(s.outcome)},
                           {"note", s.note},
                           {"verdicts", std::move(verdicts)}});
  }
  return json{{"suite", r.suite},
              {"system", r.system},
              {"status", to_string(r.status)},
              {"epsilon", rational_json(r.epsilon)},
              {"budgets", budgets_json(r.budgets)},
              {"samples_description", r.samples_description},
              {"counts", {{"pass", r.passed}, {"fail", r.failed}, {"inconclusive", r.inconclusive},
                          {"excluded", r.excluded.size()}}},
              {"notes", r.notes},
              {"excluded", points_json(space, r.excluded)},
              {"samples", std::move(samples)}};
}

/// Top-level report envelope shared by every subcommand.
inline json envelope(const std::string& command, const std::string& system, json parameters, const std::string& status,
                     json result) {
  return json{{"tool", "limitlab"},
              {"version", kReportVersion},
              {"command", command},
              {"system", system},
              {"parameters", std::move(parameters)},
              {"status", status},
              {"result", std::move(result)}};
}

/// Writes to a temporary file beside `path`, then renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorKind::InvalidArgument, "write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::InvalidArgument, "cannot replace '" + path.string() + "'");
  }
}

/// One row per point: edge id, edge name, parameter, unfolded coordinate.
inline std::string points_csv(const TreeSpace& space, std::span<const TreePoint> pts) {
  std::ostringstream out;
  out << "edge_id,edge,t,t_decimal,coordinate\n";
  for (const auto& p : pts) {
    out << p.edge << "," << space.edge(p.edge).name << "," << to_string(p.t) << "," << to_double(p.t) << ","
        << to_double(unfolded_coordinate(space, p)) << "\n";
  }
  return out.str();
}

}  // namespace limitlab::io
