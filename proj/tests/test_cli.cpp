#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "subpoisson/cli.hpp"
#include "subpoisson/exact_moments.hpp"
#include "subpoisson/hifloat.hpp"

using namespace subpoisson;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("subpoisson_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("moment") {
  auto r = run({"moment", "--poisson", "1", "-k", "4"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "15");
  CHECK(r.out.find("15.0000000000000000000000000000") != std::string::npos);
  r = run({"moment", "--binomial", "2", "0.5", "-k", "2"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "3/2");
  r = run({"moment", "--poisson", "2", "-k", "0"});
  CHECK(first_line(r.out) == "1");
  r = run({"moment", "--bernoulli", "1/3,2/3", "-k", "2"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "13/9");
}

TEST_CASE("moment errors") {
  CHECK(run({"moment", "-k", "2"}).code == 2);
  CHECK(run({"moment", "--poisson", "1"}).code == 2);
  CHECK(run({"moment", "--poisson", "1", "--binomial", "2", "0.5", "-k", "1"}).code == 2);
  CHECK(run({"moment", "--poisson", "abc", "-k", "1"}).code == 2);
  CHECK(run({"moment", "--poisson", "1", "-k", "2", "--frobnicate"}).code == 2);
  CHECK(run({"moment", "--binomial", "2", "1.5", "-k", "2"}).code == 1);
  CHECK(run({"moment", "--poisson", "-1", "-k", "2"}).code == 1);
  CHECK(run({}).code == 2);
}

TEST_CASE("bound") {
  auto r = run({"bound", "theorem1", "-k", "1", "--mu", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value=1.442695") != std::string::npos);
  r = run({"bound", "corollary", "-k", "2", "--mu", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("corollary-poly value=1.265625") != std::string::npos);
  CHECK(r.out.find("corollary-exp value=1.2840254166877414840734205680") != std::string::npos);
  CHECK(r.out.find("log=0.250000000") != std::string::npos);
  CHECK(run({"bound", "latala", "-k", "3", "--mu", "1"}).code == 2);
  CHECK(run({"bound", "latala", "-k", "3", "--mu", "1", "-c", "0.5"}).code == 2);
  CHECK(run({"bound", "latala", "-k", "3", "--mu", "1", "-c", "0.5", "-C", "2"}).code == 0);
  CHECK(run({"bound", "latala", "-k", "3", "--mu", "1", "-c", "2", "-C", "2"}).code == 1);
  CHECK(run({"bound", "nonsense", "-k", "3", "--mu", "1"}).code == 2);
  CHECK(run({"bound", "ostrovsky", "-k", "3", "--mu", "1"}).code == 2);
  CHECK(run({"bound", "berend-tassa", "-k", "2.5", "--mu", "1"}).code == 2);
}

TEST_CASE("bound variants") {
  auto r = run({"bound", "binomial-lower", "-k", "2", "--binomial", "10", "1/2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value=1.09") != std::string::npos);
  r = run({"bound", "theorem1", "-k", "1000", "--mu", "1"});
  CHECK(r.out.find("value=overflow") != std::string::npos);
  r = run({"bound", "conjecture", "-k", "1", "--mu", "0.5"});
  CHECK(r.out.find("conjecture-lower not-applicable") != std::string::npos);
  CHECK(r.out.find("conjecture-upper value=") != std::string::npos);
  r = run({"bound", "theorem1", "-k", "2", "--mu", "3", "--raw"});
  CHECK(r.out.find("raw_value=") != std::string::npos);
  CHECK(run({"bound", "bell-power-lower", "-k", "20001", "--mu", "1"}).code == 1);
  CHECK(run({"bound", "bell-power-lower", "-k", "10001", "--mu", "1", "--bits", "200"}).code == 0);
}

TEST_CASE("verify writes deterministic reports") {
  const auto a = scratch("verify_a");
  const auto b = scratch("verify_b");
  for (const auto& dir : {a, b}) {
    const auto r = run({"verify", "g", "--grid", "1e-6:1e6:200:log", "--derivative-grid", "1e-3:1e3:20:log",
                        "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS g_nonpositive_nonincreasing") != std::string::npos);
  }
  for (const char* f : {"g_nonpositive_nonincreasing.json", "g_nonpositive_nonincreasing.csv",
                        "gprime_closed_form.csv", "summary.json"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("verify usage errors and the output directory variable") {
  CHECK(run({"verify", "everything"}).code == 2);
  CHECK(run({"verify", "g", "--grid", "1:2"}).code == 2);
  CHECK(run({"verify", "montecarlo", "--samples", "10"}).code == 2);
  const auto dir = scratch("env");
  setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
  const auto r = run({"verify", "logs", "--grid", "1e-3:1e3:20:log"});
  unsetenv(cli::kOutDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "log_sandwich.json"));
  fs::remove_all(dir);
}

TEST_CASE("verify conjecture lists findings and exits 0") {
  const auto dir = scratch("conjecture");
  const auto r = run({"verify", "conjecture", "--k-grid", "0.1:40:6:log", "--mu-grid", "1:3:3:lin",
                      "--reversed-mu-grid", "0.2:0.8:2:lin", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("REPORT conjecture_bracket") != std::string::npos);
  CHECK(r.out.find("findings=0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("verify exits 1 when a check fails") {
  const auto dir = scratch("lambert");
  const auto r = run({"verify", "lambert", "--grid", "1e-2:1e2:20:log", "--lambert-grid", "1e-2:1e2:20:log",
                      "--derivative-grid", "1e-2:1e2:20:log", "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL lambert_quadratic") != std::string::npos);
  CHECK(r.out.find("PASS hoorfar_hassani") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep with exact Poisson overlay reproduces Bell numbers") {
  const auto r = run({"sweep", "--mu", "1", "--k", "1..20", "--bounds", "theorem1,poisson-lower"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  const auto header = split(line.substr(0, line.size() - 1), ',');
  CHECK(header[0] == "schema_version");
  const auto col = std::find(header.begin(), header.end(), "log_exact") - header.begin();
  const auto margin_col = std::find(header.begin(), header.end(), "margin_theorem1") - header.begin();
  unsigned k = 0;
  while (std::getline(in, line)) {
    ++k;
    const auto cells = split(line.substr(0, line.size() - 1), ',');
    const HiFloat exact = exp(HiFloat::parse(cells[col]));
    CHECK(abs(exact - HiFloat(bell_number(k))) / HiFloat(bell_number(k)) < HiFloat::parse("1e-18"));
    CHECK(HiFloat::parse(cells[margin_col]) >= 0);
  }
  CHECK(k == 20);
}

TEST_CASE("sweep options") {
  CHECK(run({"sweep", "--bounds", ""}).code == 2);
  CHECK(run({"sweep", "--bounds", "latala"}).code == 2);
  CHECK(run({"sweep", "--bounds", "binomial-lower"}).code == 2);
  CHECK(run({"sweep", "--exact", "binomial"}).code == 2);
  CHECK(run({"sweep", "--k", "0..3"}).code == 2);
  CHECK(run({"sweep", "--mu", "1", "--mu-grid", "1:2:3:lin"}).code == 2);
  const auto dir = scratch("sweep");
  fs::create_directories(dir);
  const auto r = run({"sweep", "--mu-grid", "0.5:4:3:log", "--k-grid", "0.5:20:7:log", "--bounds",
                      "theorem1,conjecture,bell-power-lower", "--out", (dir / "s.csv").string(), "--svg",
                      (dir / "s.svg").string(), "--loglog"});
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "s.csv");
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + 3 * 7);
  const std::string svg = slurp(dir / "s.svg");
  std::size_t polylines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++polylines;
  // exact, theorem1, conjecture-upper and bell-power-lower for each mu, and
  // conjecture-lower only for the two means >= 1.
  CHECK(polylines == 4 * 3 + 2);
  CHECK(svg.find("</svg>") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }
