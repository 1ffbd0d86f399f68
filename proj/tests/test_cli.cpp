#include <doctest.h>

#include "approx.hpp"

#include "checks.hpp"
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spbvp::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spbvp_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double printed_value(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size()));
}

}  // namespace

TEST_CASE("parse_number") {
  CHECK(parse_number("2^-10") == std::ldexp(1.0, -10));
  CHECK(parse_number("2^-30") == std::ldexp(1.0, -30));
  CHECK(parse_number("0.001") == 0.001);
  CHECK(parse_number("1e-3") == 0.001);
  CHECK(parse_number("10^-2") == rel(0.01));
  CHECK_THROWS(parse_number("abc"));
  CHECK_THROWS(parse_number("2^"));
  CHECK_THROWS(parse_number("0.1x"));
}

TEST_CASE("solve writes the three CSV files") {
  const auto dir = scratch_dir("solve");
  const auto r = run_cli({"solve", "--problem", "paper-test", "--epsilon", "2^-10", "--n", "32", "--mode", "plain",
                          "--output", dir.string()});
  CHECK(r.code == kOk);
  CHECK(printed_value(r.out, "E_N = ") > 1e-3);
  CHECK(printed_value(r.out, "E_N = ") < 1e-1);
  CHECK(r.out.find("layer_left = ") != std::string::npos);

  const auto nodal = slurp(dir / "nodal.csv");
  CHECK(nodal.rfind("i,x_i,ybar_i,y_exact_i,abs_err_i\n", 0) == 0);
  CHECK(std::count(nodal.begin(), nodal.end(), '\n') == 34);
  const auto global = slurp(dir / "global.csv");
  CHECK(global.rfind("# mode=plain", 0) == 0);
  CHECK(global.find("\nx,Y,y_exact,abs_err\n") != std::string::npos);
  const auto mesh = slurp(dir / "mesh.csv");
  CHECK(mesh.rfind("index,x,h\n", 0) == 0);

  const auto again = scratch_dir("solve_again");
  run_cli({"solve", "--epsilon", "2^-10", "--n", "32", "--output", again.string()});
  CHECK(slurp(again / "nodal.csv") == nodal);
  CHECK(slurp(again / "global.csv") == global);
  CHECK(slurp(again / "mesh.csv") == mesh);
}

TEST_CASE("solve is exact for the linear problem") {
  const auto dir = scratch_dir("linear");
  const auto r = run_cli({"solve", "--problem", "linear-gamma", "--epsilon", "2^-8", "--n", "64", "--output",
                          dir.string()});
  CHECK(r.code == kOk);
  CHECK(printed_value(r.out, "E_N = ") <= 1e-12);
}

TEST_CASE("solve uses the output directory from the environment") {
  const auto dir = scratch_dir("env");
  ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = run_cli({"solve", "--epsilon", "2^-6", "--n", "16"});
  ::unsetenv(kOutputDirEnv);
  CHECK(r.code == kOk);
  CHECK(fs::exists(dir / "nodal.csv"));
  CHECK(fs::exists(dir / "global.csv"));
  CHECK(fs::exists(dir / "mesh.csv"));
}

TEST_CASE("usage errors") {
  CHECK(run_cli({"solve", "--epsilon", "2^-10"}).code == kUsage);
  CHECK(run_cli({"solve", "--epsilon", "2", "--n", "32"}).code == kUsage);
  CHECK(run_cli({"solve", "--epsilon", "2^-10", "--n", "30"}).code == kUsage);
  CHECK(run_cli({"solve", "--problem", "nope", "--epsilon", "2^-10", "--n", "32"}).code == kUsage);
  CHECK(run_cli({"solve", "--epsilon", "2^-4", "--n", "32", "--mode", "repaired"}).code == kUsage);
  CHECK(run_cli({"table", "--n", "32,48"}).code == kUsage);
  CHECK(run_cli({"table", "--format", "xml"}).code == kUsage);
  CHECK(run_cli({"check", "--sabotage", "other"}).code == kUsage);
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"bogus"}).code == kUsage);
  CHECK(run_cli({"--help"}).code == kOk);
}

TEST_CASE("non-convergence has its own exit code") {
  const auto dir = scratch_dir("noconv");
  const auto r = run_cli({"solve", "--epsilon", "2^-10", "--n", "32", "--newton-max-iter", "0", "--output",
                          dir.string()});
  CHECK(r.code == kNoConvergence);
  CHECK(r.err.find("converge") != std::string::npos);
  CHECK(run_cli({"table", "--n", "32", "--newton-max-iter", "0"}).code == kNoConvergence);
}

TEST_CASE("table with a single N has no orders") {
  const auto r = run_cli({"table", "--n", "32", "--format", "csv", "--epsilon", "2^-10,2^-20"});
  CHECK(r.code == kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "epsilon,N,E_N,Ord,layer_left,interior,layer_right,global_max,mode,converged,iterations");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      fields.push_back(f);
    }
    REQUIRE(fields.size() == 11);
    CHECK(fields[1] == "32");
    CHECK(fields[3].empty());
  }
  CHECK(rows == 2);
}

TEST_CASE("default table layout") {
  const auto r = run_cli({"table"});
  CHECK(r.code == kOk);
  int n_rows = 0;
  for (const char* label : {"2^5 ", "2^6 ", "2^7 ", "2^8 ", "2^9 ", "2^10 ", "2^11 "}) {
    std::size_t pos = 0;
    int hits = 0;
    while ((pos = r.out.find(std::string(" ") + label, pos)) != std::string::npos) {
      ++hits;
      ++pos;
    }
    CHECK(hits == 2);  // two blocks of three epsilon groups
    n_rows += hits;
  }
  CHECK(n_rows == 14);
  for (const char* eps : {"2^-4", "2^-6", "2^-10", "2^-12", "2^-20", "2^-30"}) {
    CHECK(r.out.find(eps) != std::string::npos);
  }
  CHECK(run_cli({"table"}).out == r.out);
}

TEST_CASE("table writes to a file") {
  const auto dir = scratch_dir("table");
  fs::create_directories(dir);
  const auto file = dir / "report.csv";
  const auto r = run_cli({"table", "--format", "csv", "--n", "32,64", "--output", file.string()});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  CHECK(slurp(file).rfind("epsilon,N,", 0) == 0);
}

TEST_CASE("repaired table shows global errors") {
  const auto r = run_cli({"table", "--mode", "repaired", "--epsilon", "2^-12", "--n", "128,256"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("global") != std::string::npos);
}

TEST_CASE("check command") {
  const auto r = run_cli({"check"});
  CHECK(r.code == kOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const auto a = run_cli({"check", "--trials", "5000", "--seed", "7"});
  const auto b = run_cli({"check", "--trials", "5000", "--seed", "7"});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);

  const auto s = run_cli({"check", "--sabotage", "delta-d-naive"});
  CHECK(s.code == kPropertyFailure);
  CHECK(s.out.find("FAIL coefficient identities") != std::string::npos);
}

TEST_CASE("sabotaged coefficients fail by cancellation at small beta h") {
  const auto res = check_coefficient_identities(Sabotage::delta_d_naive);
  CHECK_FALSE(res.passed);
  CHECK(res.detail.find("beta*h=1e-06") != std::string::npos);
  CHECK(check_coefficient_identities().passed);
  CHECK(parse_sabotage("none") == Sabotage::none);
  CHECK_THROWS(parse_sabotage("x"));
}
