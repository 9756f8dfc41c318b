#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lora/commands.hpp"
#include "lora/scenario.hpp"
#include "testutil.hpp"

using namespace lora;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(LORACOV_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

ScenarioFile fast_scenario() {
  ScenarioFile sc;
  sc.trials = 200;
  sc.d1_points = 12;
  sc.nbar_sweep = {1.0, 200.0, 800.0};
  return sc;
}

}  // namespace

TEST_CASE("analyze emits one row per grid point, deterministically") {
  const ScenarioFile sc;  // default 60-point grid
  std::ostringstream a, b;
  CHECK(run_analyze(sc, a) == 0);
  CHECK(run_analyze(sc, b) == 0);
  CHECK(a.str() == b.str());

  const auto lines = split_lines(a.str());
  REQUIRE(lines.size() == 61);
  CHECK(lines[0] == "d1_km,h1,q1,q1_approx,joint");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(split_csv(lines[i]).size() == 5);
  CHECK(a.str().find("ERROR") == std::string::npos);
}

TEST_CASE("analyze honors the half-open convention on explicit boundary points") {
  ScenarioFile sc;
  sc.d1_grid = {2.0, 2.5};  // 2.0 sits exactly on the SF7/SF8 boundary
  std::ostringstream out;
  REQUIRE(run_analyze(sc, out) == 0);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 3);
  const auto boundary = split_csv(lines[1]);
  const auto inside = split_csv(lines[2]);
  CHECK(boundary[0] == "2");
  // q1_approx is piecewise constant per annulus: the boundary row must carry
  // the SF8 value
  CHECK(boundary[3] == inside[3]);
}

TEST_CASE("simulate is reproducible and joinable with analyze") {
  ScenarioFile sc = fast_scenario();
  sc.seed = 7;
  sc.trials = 100;
  std::ostringstream a, b;
  CHECK(run_simulate(sc, a) == 0);
  CHECK(run_simulate(sc, b) == 0);
  CHECK(a.str() == b.str());

  const auto lines = split_lines(a.str());
  REQUIRE(lines.size() == 1 + 12 * 3);
  CHECK(lines[0] == "d1_km,metric,estimate,ci95,trials,seed");

  std::ostringstream an;
  run_analyze(sc, an);
  const auto arows = split_lines(an.str());
  // same d1 keys row-for-row: simulate row 1+3*i matches analyze row 1+i
  for (int i = 0; i < 12; ++i) {
    CHECK(split_csv(lines[1 + 3 * i])[0] == split_csv(arows[1 + i])[0]);
  }
}

TEST_CASE("simulate q1 column is exactly one in an empty network") {
  ScenarioFile sc = fast_scenario();
  sc.cfg.mean_devices = 0.0;
  sc.d1_grid = {3.0};
  sc.trials = 50;
  std::ostringstream out;
  REQUIRE(run_simulate(sc, out) == 0);
  const auto lines = split_lines(out.str());
  const auto q1row = split_csv(lines[2]);
  CHECK(q1row[1] == "q1");
  CHECK(q1row[2] == "1");
}

TEST_CASE("simulate disk mode labels rows and stays deterministic") {
  ScenarioFile sc = fast_scenario();
  sc.disk = true;
  sc.trials = 400;
  std::ostringstream a, b;
  CHECK(run_simulate(sc, a) == 0);
  CHECK(run_simulate(sc, b) == 0);
  CHECK(a.str() == b.str());
  const auto lines = split_lines(a.str());
  REQUIRE(lines.size() == 4);
  for (int i = 1; i <= 3; ++i) CHECK(split_csv(lines[i])[0] == "disk");
}

TEST_CASE("sweep columns behave as the theory says") {
  ScenarioFile sc = fast_scenario();
  std::ostringstream csv, summary;
  CHECK(run_sweep(sc, csv, summary) == 0);
  const auto lines = split_lines(csv.str());
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "nbar,coverage_h1,coverage_q1,coverage_joint");

  std::string h1_col;
  double prev_joint = 2.0;
  for (int i = 1; i <= 3; ++i) {
    const auto row = split_csv(lines[i]);
    if (i == 1) h1_col = row[1];
    CHECK(row[1] == h1_col);  // density-independent, byte-for-byte
    const double joint = std::stod(row[3]);
    CHECK(joint < prev_joint);  // more interferers cannot help
    prev_joint = joint;
  }

  const std::string s = summary.str();
  CHECK(s.find("crossover_nbar = ") != std::string::npos);
  const double crossover = std::stod(s.substr(s.find("crossover_nbar = ") + 17));
  CHECK(crossover > 1.0);
  CHECK(crossover < 2000.0);
}

TEST_CASE("table lists six SF rows and the derived quantities") {
  const ScenarioFile sc;
  std::ostringstream out;
  CHECK(run_table(sc, out) == 0);
  const std::string text = out.str();
  for (const char* needle : {"  7 ", "  8 ", "  9 ", " 10 ", " 11 ", " 12 "})
    CHECK(text.find(needle) != std::string::npos);
  CHECK(text.find("-117.0309") != std::string::npos);

  // per-annulus intensities add up to p0 * nbar when the disk covers all annuli
  const auto pos = text.find("sum(v)");
  REQUIRE(pos != std::string::npos);
  const double sum_v = std::stod(text.substr(pos + 9));
  CHECK(sum_v == doctest::Approx(0.01 * 500.0).epsilon(1e-9));
}

TEST_CASE("binary exit codes distinguish failure classes") {
  CHECK(run_binary("") == 1);                      // missing subcommand
  CHECK(run_binary("frobnicate") == 1);            // unknown subcommand
  CHECK(run_binary("analyze --no-such-flag") == 1);
  CHECK(run_binary("analyze --radius_km oops") == 1);
  CHECK(run_binary("analyze --config /no/such/file.cfg") == 1);
  CHECK(run_binary("table --radius_km=-5") == 1);  // fails validation
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("table") == 0);
  CHECK(run_binary("analyze --d1_points 3 --out /no/such/dir/out.csv") == 3);
  // a starved subdivision budget on a boundary-layer integrand
  CHECK(run_binary("analyze --d1_grid 11.0 --mean_devices 5000 --quad_max_subdivisions 0") == 2);
}

TEST_CASE("analyze marks failed rows and keeps going") {
  ScenarioFile sc;
  sc.cfg.mean_devices = 5000.0;
  sc.quad.max_subdivisions = 2;  // enough for the 11 km row, not the 0.5 km one
  sc.d1_grid = {0.5, 11.0};
  std::ostringstream out;
  CHECK(run_analyze(sc, out) == 2);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].find("ERROR") != std::string::npos);
  CHECK(split_csv(lines[1]).size() == 5);
  CHECK(lines[2].find("ERROR") == std::string::npos);
}

TEST_CASE("binary writes byte-identical files for identical scenarios") {
  const std::string out1 = testutil::temp_path();
  const std::string out2 = testutil::temp_path();
  const std::string args = "simulate --trials 150 --seed 11 --d1_points 4 --threads 2 --out ";
  REQUIRE(run_binary(args + out1) == 0);
  REQUIRE(run_binary(args + out2) == 0);
  std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
