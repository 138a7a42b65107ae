// limitlab: limit sets, point classification and theorem suites from the
// command line. Exit codes: 0 ok, 1 unexpected FAIL, 2 usage or parse
// error, 3 budget exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "limitlab/classify.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/io/description.hpp"
#include "limitlab/io/report.hpp"
#include "limitlab/limits.hpp"
#include "limitlab/verify.hpp"

using namespace limitlab;
using io::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kBudget = 3;

struct Options {
  std::string example;
  std::string system_file;
  std::string point;
  std::string kind = "omega";
  std::string policy = "stay";
  std::string epsilon;
  std::size_t depth = kDefaultDepth;
  std::optional<std::size_t> budget;
  std::string json_path;
  std::string csv_path;
  std::optional<std::uint64_t> seed;
  std::string suite;
  std::string query = "all";
  std::string file;
  bool print = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// The example name or description document, with `random` taking --seed.
SystemDescription load_description(const Options& o) {
  if (o.example.empty() == o.system_file.empty())
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --example or --system");
  if (!o.example.empty()) {
    SystemDescription d;
    d.example = o.example == "random" ? "random:" + std::to_string(o.seed.value_or(1)) : o.example;
    return d;
  }
  const auto parsed = parse_system(read_file(o.system_file));
  if (!parsed.ok()) {
    std::string msg;
    for (const auto& diag : parsed.diagnostics) msg += (msg.empty() ? "" : "\n") + o.system_file + ":" + diag.to_string();
    throw Error(ErrorKind::Parse, msg);
  }
  return *parsed.description;
}

ExampleSystem load_system(const Options& o, const SystemDescription& d) {
  ExampleSystem ex = to_system(d);
  if (!d.example) ex.name = std::filesystem::path(o.system_file).stem().string();
  return ex;
}

Rational epsilon_for(const Options& o, const ExampleSystem* ex) {
  if (!o.epsilon.empty()) {
    const Rational e = parse_rational(o.epsilon);
    if (e <= 0) throw Error(ErrorKind::InvalidArgument, "--epsilon must be positive");
    return e;
  }
  return ex ? suggested_epsilon(*ex) : default_epsilon();
}

/// Landmark labels of the example ("0", "z0", "T1", ...) first, then
/// EDGE:P/Q or a vertex name.
TreePoint resolve_point(const ExampleSystem& ex, const std::string& text) {
  for (const auto& [label, p] : ex.landmarks)
    if (label == text) return p;
  return parse_point(ex.space(), text);
}

json parameters_json(const Options& o, const Rational& eps) {
  json p{{"epsilon", io::rational_json(eps)}, {"depth", o.depth}};
  if (o.budget) p["budget"] = *o.budget;
  if (o.seed) p["seed"] = *o.seed;
  if (!o.point.empty()) p["point"] = o.point;
  return p;
}

void emit(const Options& o, const json& report) {
  if (!o.json_path.empty()) io::write_atomic(o.json_path, report.dump(2) + "\n");
}

int run_shift_limits(const Options& o, const std::string& system) {
  if (o.kind != "omega") throw Error(ErrorKind::InvalidArgument, "the shift example supports --kind omega only");
  if (o.point.empty()) throw Error(ErrorKind::InvalidArgument, "--point is required");
  const Rational eps = epsilon_for(o, nullptr);
  const ShiftSystem s = build_shift_example();
  const auto x = SymbolicPoint::parse(o.point);
  const std::size_t window = o.budget.value_or(kDefaultWindow);
  const auto a = omega_limit(s, x, eps, kDefaultTransient, window);
  std::cout << "omega(" << x.to_string() << ") at eps " << to_string(eps) << ": " << a.points.size() << " points"
            << (a.exact ? " (exact)" : "") << "\n";
  for (const auto& p : a.points) std::cout << "  " << p.to_string() << "\n";
  emit(o, io::envelope("limits", system, parameters_json(o, eps), "ok", io::approx_json(a)));
  if (!o.csv_path.empty()) {
    std::string csv = "label,distance_to_T0\n";
    for (const auto& p : a.points) csv += p.to_string() + "," + to_string(symbolic_distance(p, SymbolicPoint::landmark(0))) + "\n";
    io::write_atomic(o.csv_path, csv);
  }
  return kOk;
}

int run_limits(const Options& o) {
  const auto d = load_description(o);
  if (d.example == "shift") return run_shift_limits(o, "shift");
  const ExampleSystem ex = load_system(o, d);
  const TreeSpace& space = ex.space();
  if (o.point.empty()) throw Error(ErrorKind::InvalidArgument, "--point is required");
  const TreePoint p = resolve_point(ex, o.point);
  const Rational eps = epsilon_for(o, &ex);
  TreeSetApprox a;
  if (o.kind == "omega") {
    a = omega_limit(ex.map, p, eps, kDefaultTransient, o.budget.value_or(kDefaultWindow));
  } else if (o.kind == "alpha") {
    a = alpha_limit(ex.map, p, eps, o.depth, o.budget.value_or(kDefaultComponentCap));
  } else if (o.kind == "salpha") {
    a = special_alpha_limit_direct(ex.map, p, eps, o.depth, o.budget.value_or(kDefaultBranchBudget));
  } else if (o.kind == "salpha-theorem") {
    NonwanderingOracle nw(ex.map, o.budget.value_or(kDefaultTimeBudget));
    a = special_alpha_limit_via_theorem(ex.map, p, eps, nw, o.depth);
  } else if (o.kind == "branch") {
    BranchChoice choice;
    if (o.policy == "stay") choice.policy = BranchPolicy::StayAtRoot;
    else if (o.policy == "leftmost") choice.policy = BranchPolicy::Leftmost;
    else if (o.policy == "farthest") choice.policy = BranchPolicy::FarthestFromRoot;
    else throw Error(ErrorKind::InvalidArgument, "unknown --policy '" + o.policy + "'");
    a = branch_alpha_limit(ex.map, p, choice, eps, o.depth);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown --kind '" + o.kind + "'");
  }
  std::cout << o.kind << "(" << format_point(space, p) << ") at eps " << to_string(eps) << ": " << a.points.size()
            << " points" << (a.exact ? " (exact)" : a.converged ? " (converged)" : " (not converged)") << "\n";
  std::size_t shown = 0;
  for (const auto& q : a.points) {
    if (shown++ == 20) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  " << format_point(space, q) << "\n";
  }
  if (!a.note.empty()) std::cout << a.note << "\n";
  emit(o, io::envelope("limits", ex.name, parameters_json(o, eps), "ok", io::approx_json(space, a)));
  if (!o.csv_path.empty()) io::write_atomic(o.csv_path, io::points_csv(space, a.points.points()));
  return kOk;
}

int run_classify(const Options& o) {
  const auto d = load_description(o);
  if (d.example == "shift") throw Error(ErrorKind::InvalidArgument, "classify works on tree maps");
  const ExampleSystem ex = load_system(o, d);
  const TreeSpace& space = ex.space();
  const Rational eps = epsilon_for(o, &ex);
  const std::size_t time = o.budget.value_or(kDefaultTimeBudget);
  json result = json::object();
  if (o.point.empty()) {
    const Verdict mono = check_monotone(ex.map);
    const std::size_t max_period = o.budget.value_or(space.edge_count() + 1);
    const auto pp = periodic_points(ex.map, max_period);
    std::cout << "monotone: " << to_string(mono.outcome) << " (" << mono.witness.note << ")\n";
    std::cout << "periodic orbits up to period " << max_period << ": " << pp.orbits.size() << "\n";
    for (const auto& orbit : pp.orbits)
      std::cout << "  period " << orbit.period << " at " << format_point(space, orbit.base) << "\n";
    for (const auto& iv : pp.intervals)
      std::cout << "  period " << iv.period << " on " << space.edge(iv.edge).name << " [" << to_string(iv.lo) << ", "
                << to_string(iv.hi) << "]\n";
    result["monotone"] = io::verdict_json(space, mono);
    result["periodic"] = io::periodic_json(space, pp);
    result["max_period"] = max_period;
  } else {
    const TreePoint p = resolve_point(ex, o.point);
    json verdicts = json::array();
    auto add = [&](const Verdict& v) {
      std::cout << v.query << ": " << to_string(v.outcome) << (v.budget_relative ? " (at budget)" : "") << "  "
                << v.witness.note << "\n";
      verdicts.push_back(io::verdict_json(space, v));
    };
    const auto period = minimal_period(ex.map, p, time);
    std::cout << "periodic: " << (period ? "yes, period " + std::to_string(*period) : "no period <= " + std::to_string(time))
              << "\n";
    result["period"] = period ? json(*period) : json(nullptr);
    if (o.query == "all" || o.query == "almost-periodic") add(is_almost_periodic(ex.map, p, eps, kDefaultWindow, time));
    if (o.query == "all" || o.query == "recurrent") add(is_recurrent(ex.map, p, eps));
    if (o.query == "all" || o.query == "nonwandering") add(is_nonwandering(ex.map, p, eps, time));
    if (o.query != "all" && o.query != "almost-periodic" && o.query != "recurrent" && o.query != "nonwandering")
      throw Error(ErrorKind::InvalidArgument, "unknown --query '" + o.query + "'");
    result["verdicts"] = std::move(verdicts);
  }
  emit(o, io::envelope("classify", ex.name, parameters_json(o, eps), "ok", std::move(result)));
  return kOk;
}

int run_verify(const Options& o) {
  const auto d = load_description(o);
  if (d.example == "shift") throw Error(ErrorKind::InvalidArgument, "suites run on tree maps");
  const ExampleSystem ex = load_system(o, d);
  const TreeSpace& space = ex.space();
  SuiteConfig config;
  config.epsilon = epsilon_for(o, &ex);
  config.depth = o.depth;
  if (o.budget) config.time_budget = *o.budget;
  if (o.seed) config.seed = *o.seed;
  SystemVerifier sys(ex, config);
  std::optional<TreePoint> point;
  if (!o.point.empty()) point = resolve_point(ex, o.point);
  std::vector<std::string> ids;
  if (o.suite == "all") ids = suite_ids();
  else ids.push_back(o.suite);
  json reports = json::array();
  int code = kOk;
  SuiteStatus overall = SuiteStatus::Pass;
  for (const auto& id : ids) {
    const SuiteReport r = run_suite(sys, id, point);
    std::cout << r.suite << " on " << r.system << ": " << to_string(r.status) << "  (" << r.passed << " pass, "
              << r.failed << " fail, " << r.inconclusive << " inconclusive, " << r.excluded.size() << " excluded)\n";
    for (const auto& n : r.notes) std::cout << "  " << n << "\n";
    std::size_t shown = 0;
    for (const auto* f : r.failures()) {
      if (shown++ == 5) break;
      std::cout << "  FAIL at " << format_point(space, f->point) << ": " << f->note << "\n";
    }
    const int c = exit_code(r.status);
    if (c > code || (code == kOk && c != kOk)) {
      code = c;
      overall = r.status;
    }
    reports.push_back(io::suite_json(space, r));
  }
  json result = ids.size() == 1 ? reports.front() : json{{"suites", reports}};
  emit(o, io::envelope("verify", ex.name, parameters_json(o, config.epsilon), to_string(overall), std::move(result)));
  return code;
}

int run_examples(const Options& o) {
  json list = json::array();
  for (const auto& e : example_catalog()) {
    std::cout << e.name << "\t" << e.description << "\n";
    list.push_back(json{{"name", e.name}, {"description", e.description}});
  }
  emit(o, io::envelope("examples", "", json::object(), "ok", json{{"examples", list}}));
  return kOk;
}

int run_parse_check(const Options& o) {
  const auto parsed = parse_system(read_file(o.file));
  for (const auto& diag : parsed.diagnostics) std::cerr << o.file << ":" << diag.to_string() << "\n";
  json diags = json::array();
  for (const auto& diag : parsed.diagnostics)
    diags.push_back(json{{"line", diag.line}, {"column", diag.column}, {"message", diag.message}});
  const bool ok = parsed.ok();
  json result{{"valid", ok}, {"diagnostics", diags}};
  if (ok) {
    const auto& d = *parsed.description;
    if (o.print) std::cout << print_system(d);
    else if (d.example) std::cout << o.file << ": ok (example " << *d.example << ")\n";
    else
      std::cout << o.file << ": ok (" << d.vertices.size() << " vertices, " << d.edges.size() << " edges, "
                << d.segments.size() << " segments)\n";
    result["canonical"] = print_system(d);
  }
  emit(o, io::envelope("parse-check", o.file, json::object(), ok ? "ok" : "invalid", std::move(result)));
  return ok ? kOk : kUsage;
}

void add_system_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--example", o.example, "example NAME[:params] (see `examples list`)");
  cmd->add_option("--system", o.system_file, "system description file");
  cmd->add_option("--epsilon", o.epsilon, "resolution P/Q (default 1/1024)");
  cmd->add_option("--depth", o.depth, "backward depth (default 64)");
  cmd->add_option("--budget", o.budget, "time, window or enumeration budget");
  cmd->add_option("--json", o.json_path, "write a JSON report");
  cmd->add_option("--seed", o.seed, "seed for randomized fixtures and sampling");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitlab: limit sets of monotone tree maps"};
  app.require_subcommand(1);
  Options o;

  auto* limits = app.add_subcommand("limits", "omega, alpha, special alpha or branch limit set of a point");
  add_system_flags(limits, o);
  limits->add_option("--point", o.point, "EDGE:P/Q, a vertex name, or a symbolic point for the shift");
  limits->add_option("--kind", o.kind, "omega|alpha|salpha|salpha-theorem|branch")
      ->check(CLI::IsMember({"omega", "alpha", "salpha", "salpha-theorem", "branch"}));
  limits->add_option("--policy", o.policy, "branch policy: stay|leftmost|farthest");
  limits->add_option("--points-csv", o.csv_path, "write the set as CSV");

  auto* classify = app.add_subcommand("classify", "classify a point, or list periodic orbits");
  add_system_flags(classify, o);
  classify->add_option("--point", o.point, "point to classify; omit for the periodic structure");
  classify->add_option("--query", o.query, "all|almost-periodic|recurrent|nonwandering");

  auto* verify = app.add_subcommand("verify", "run a theorem suite");
  add_system_flags(verify, o);
  verify->add_option("--suite", o.suite, "suite id or `all`")->required();
  verify->add_option("--point", o.point, "point for point-based suites");

  auto* examples = app.add_subcommand("examples", "example systems");
  auto* list = examples->add_subcommand("list", "list example builders");
  list->add_option("--json", o.json_path, "write a JSON report");
  examples->require_subcommand(1);

  auto* parse_check = app.add_subcommand("parse-check", "validate a system description");
  parse_check->add_option("file", o.file, "description file")->required();
  parse_check->add_flag("--print", o.print, "print the canonical form");
  parse_check->add_option("--json", o.json_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (limits->parsed()) return run_limits(o);
    if (classify->parsed()) return run_classify(o);
    if (verify->parsed()) {
      if (o.suite != "all" && std::find(suite_ids().begin(), suite_ids().end(), o.suite) == suite_ids().end())
        throw Error(ErrorKind::InvalidArgument, "unknown suite '" + o.suite + "'");
      return run_verify(o);
    }
    if (list->parsed()) return run_examples(o);
    if (parse_check->parsed()) return run_parse_check(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::PolicyDeadEnd ? kFail : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
