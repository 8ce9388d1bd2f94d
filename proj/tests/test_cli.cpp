#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include <json.hpp>

using namespace ratio_bounds;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"ratio-bounds"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("enclose I with oracle") {
    const auto r = run_cli({"enclose", "--kind", "I", "--nu", "1", "--x", "1", "--level", "1", "--oracle"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "lower") == "0.44538276889462808");
    CHECK(field(r.out, "lower_family") == "Btilde0");
    CHECK(field(r.out, "upper_family") == "Btilde2");
    CHECK(std::stod(field(r.out, "oracle")) == doctest::Approx(0.44638996589653451).epsilon(1e-15));
  }

  TEST_CASE("enclose K at nu=1/2 collapses") {
    const auto r = run_cli({"enclose", "--kind", "K", "--nu", "0.5", "--x", "7", "--level", "1"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "lower") == "1");
    CHECK(field(r.out, "upper") == "1");
  }

  TEST_CASE("invalid family request needs --unchecked") {
    const auto refused = run_cli({"enclose", "--kind", "I", "--nu", "0.3", "--x", "1", "--family", "B", "--alpha", "0",
                                  "--side", "upper"});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("nu>=1/2") != std::string::npos);
    const auto forced = run_cli({"enclose", "--kind", "I", "--nu", "0.3", "--x", "1", "--family", "B", "--alpha", "0",
                                 "--side", "upper", "--unchecked"});
    CHECK(forced.code == 0);
    CHECK(field(forced.out, "valid") == "false");
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"enclose", "--nu", "1"}).code == 2);
    CHECK(run_cli({"enclose", "--kind", "Q", "--nu", "1", "--x", "1"}).code == 2);
    CHECK(run_cli({"enclose", "--kind", "I", "--nu", "1", "--x", "-1"}).code == 2);
    CHECK(run_cli({"enclose", "--kind", "I", "--nu", "-1", "--x", "1"}).code == 2);
    CHECK(run_cli({"enclose", "--kind", "K", "--nu", "1", "--x", "1", "--family", "b"}).code == 2);
    CHECK(run_cli({"verify", "--suite", "bogus"}).code == 2);
    CHECK(run_cli({"--digits", "5", "verify", "--suite", "identities"}).code == 2);
  }

  TEST_CASE("help exits 0") { CHECK(run_cli({"--help"}).code == 0); }

  TEST_CASE("oracle domain is a usage error, convergence failure exits 3") {
    CHECK(run_cli({"enclose", "--kind", "K", "--nu", "80", "--x", "1", "--oracle"}).code == 2);
    CHECK(run_cli({"cfbench", "--nu", "1", "--x", "10", "--tol", "1e-30"}).code == 3);
  }

  TEST_CASE("sweep I with oracle: 25 rows, positive margins") {
    const auto r = run_cli({"sweep", "--kind", "I", "--nu", "1", "--x-log", "1e-3", "1e3", "25", "--level", "1", "--oracle"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "nu,x,lower,upper,gap,lower_family,upper_family,oracle,lower_margin,upper_margin");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      REQUIRE(cells.size() == 10);
      CHECK(std::stod(cells[8]) >= 0.0);
      CHECK(std::stod(cells[9]) >= 0.0);
    }
    CHECK(rows == 25);
  }

  TEST_CASE("sweep K json, nu-major order") {
    const auto r = run_cli({"sweep", "--kind", "K", "--nu", "1,2", "--level", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 50);
    CHECK(j[0]["nu"] == 1.0);
    CHECK(j[24]["nu"] == 1.0);
    CHECK(j[25]["nu"] == 2.0);
    CHECK(j[0]["upper_family"] == "D0");
    CHECK(j[0]["lower_family"] == "d0");
    CHECK_FALSE(j[0].contains("oracle"));
  }

  TEST_CASE("sweep grid errors") {
    CHECK(run_cli({"sweep", "--kind", "I", "--nu", "1", "--x-log", "1e-3", "1e3", "0"}).code == 2);
    CHECK(run_cli({"sweep", "--kind", "I", "--nu", "1", "--x", "0"}).code == 2);
    CHECK(run_cli({"sweep", "--kind", "I", "--x", "1"}).code == 2);
    CHECK(run_cli({"sweep", "--kind", "I", "--nu", "1", "--x", "1", "--out", "/nonexistent/dir/out.csv"}).code == 2);
  }

  TEST_CASE("sweep files are deterministic") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "ratio_bounds_sweep_a.csv").string();
    const std::string b = (dir / "ratio_bounds_sweep_b.csv").string();
    for (const auto& path : {a, b}) {
      REQUIRE(run_cli({"sweep", "--kind", "I", "--nu-range", "0", "3", "4", "--x-lin", "0.5", "5", "6", "--oracle",
                       "--out", path.c_str()})
                  .code == 0);
    }
    auto slurp = [](const std::string& p) {
      std::ifstream f(p);
      std::stringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    const std::string ca = slurp(a);
    CHECK(count_lines(ca) == 25);
    CHECK(ca == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
  }

  TEST_CASE("cfbench table") {
    const auto r = run_cli({"cfbench", "--nu", "1", "--x", "1,10,100,1000", "--tol", "1e-10"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 5);
    CHECK(r.out.find("VIOLATED") == std::string::npos);
    const auto one = run_cli({"cfbench", "--nu", "1", "--x", "10", "--policies", "b"});
    CHECK(one.code == 0);
    CHECK(count_lines(one.out) == 2);
    const auto err = run_cli({"cfbench", "--nu", "1", "--x", "10,100", "--tol", "1e-30"});
    CHECK(err.code == 3);
    CHECK(count_lines(err.out) == 3);
    CHECK(err.out.find("ERR") != std::string::npos);
  }

  TEST_CASE("verify identities") {
    const auto r = run_cli({"verify", "--suite", "identities"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto cf = run_cli({"verify", "--suite", "cf", "--nu", "1", "--x", "50"});
    CHECK(cf.code == 0);
  }

  TEST_CASE("number formatting keeps 17 significant digits") {
    CHECK(cli::format_number(0.1) == "0.10000000000000001");
    CHECK(cli::format_number(1.0) == "1");
  }
}
