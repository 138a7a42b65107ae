#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "limitlab/examples.hpp"
#include "limitlab/io/report.hpp"
#include "support.hpp"

using namespace limitlab;
using limitlab::io::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Report, RationalsCarryExactAndDecimal) {
  const json j = io::rational_json(make_rational(-3, 8));
  EXPECT_EQ(j["exact"], "-3/8");
  EXPECT_DOUBLE_EQ(j["decimal"].get<double>(), -0.375);
  EXPECT_EQ(io::rational_json(Rational(2))["exact"], "2/1");
}

TEST(Report, PointCoordinateUnfoldsEdges) {
  const auto inf = build_infinite_star(3);
  // beams of S_1, S_2, S_3 have lengths 1, 1/2, 1/2, 1/3, 1/3, 1/3
  const TreePoint p{3, make_rational(1, 2)};
  const json j = io::point_json(inf.space(), p);
  EXPECT_EQ(j["edge"], "I3_0");
  EXPECT_EQ(j["edge_id"], 3);
  EXPECT_EQ(j["t"]["exact"], "1/2");
  EXPECT_EQ(j["coordinate"]["exact"], "13/6");
  EXPECT_FALSE(j.contains("vertex"));
  EXPECT_EQ(io::point_json(inf.space(), inf.landmark("z0"))["vertex"], "z0");
}

TEST(Report, ApproxAndEnvelopeShape) {
  const auto g = build_tent_tail();
  const auto sa = special_alpha_limit_direct(g.map, TreePoint{0, 0}, dyadic(10), 32);
  const json a = io::approx_json(g.space(), sa);
  EXPECT_EQ(a["kind"], "salpha");
  EXPECT_EQ(a["size"], 2);
  EXPECT_EQ(a["points"][0]["label"], "I:0/1");
  EXPECT_EQ(a["points"][1]["label"], "I:1/1");
  EXPECT_TRUE(a["exact"].get<bool>());
  const json e = io::envelope("limits", g.name, json::object(), "ok", a);
  std::vector<std::string> keys;
  for (const auto& [k, v] : e.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"tool", "version", "command", "system", "parameters", "status", "result"}));
}

TEST(Report, SymbolicApproxUsesLabels) {
  const auto w = omega_limit(build_shift_example(), SymbolicPoint::shifted_z(0), dyadic(3));
  const json j = io::approx_json(w);
  EXPECT_EQ(j["size"], 4);
  for (const auto& p : j["points"]) EXPECT_EQ(p.size(), 1u);
}

TEST(Report, SuiteReportCounts) {
  const auto g = build_tent_tail();
  SystemVerifier sys(g, SuiteConfig{});
  const SuiteReport r = run_suite(sys, "salpha-membership", std::nullopt);
  const json j = io::suite_json(g.space(), r);
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_EQ(j["counts"]["pass"].get<std::size_t>(), r.passed);
  EXPECT_EQ(j["counts"]["excluded"].get<std::size_t>(), r.excluded.size());
  EXPECT_EQ(j["samples"].size(), r.samples.size());
  EXPECT_EQ(j["epsilon"]["exact"], "1/1024");
}

TEST(Report, DumpIsDeterministic) {
  const auto s = build_star_map(3);
  auto make = [&] {
    SystemVerifier sys(s, SuiteConfig{});
    return io::suite_json(s.space(), run_suite(sys, "omega-iff-alpha", std::nullopt)).dump(2);
  };
  EXPECT_EQ(make(), make());
}

TEST(Report, PointsCsv) {
  const auto e = build_e616_star(3);
  std::vector<TreePoint> pts{e.landmark("z0"), TreePoint{1, make_rational(1, 2)}};
  const std::string csv = io::points_csv(e.space(), pts);
  std::istringstream in(csv);
  std::string header, row0, row1, extra;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, "edge_id,edge,t,t_decimal,coordinate");
  EXPECT_EQ(row0, "0,I1,0/1,0,0");
  // beam 2 starts after beam 1 (length 1) and has length 1/2
  EXPECT_EQ(row1, "1,I2,1/2,0.5,1.25");
}

TEST(Report, WriteAtomicReplacesAndLeavesNoTemp) {
  const auto dir = std::filesystem::temp_directory_path() / ("limitlab-report-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  io::write_atomic(path, "first\n");
  io::write_atomic(path, "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(io::write_atomic(dir / "missing" / "x.json", "x"), Error);
  std::filesystem::remove_all(dir);
}
