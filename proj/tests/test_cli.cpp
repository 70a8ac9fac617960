#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mzbell/cli.hpp"
#include "support.hpp"

using namespace mzbell;
using testing::near;

namespace {
constexpr double pi = std::numbers::pi;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// header -> values of the first data row
std::map<std::string, std::string> first_row(const std::string& csv) {
  const auto lines = split(csv, '\n');
  const auto head = split(lines.at(0), ','), vals = split(lines.at(1), ',');
  std::map<std::string, std::string> m;
  for (std::size_t k = 0; k < head.size(); ++k) m[head[k]] = vals.at(k);
  return m;
}

// Half a unit in the 12th significant digit of x.
double rounding_bound(double x) {
  if (x == 0.0) return 0.0;
  return 0.5 * std::pow(10.0, std::floor(std::log10(std::abs(x))) - 11.0) * (1 + 1e-9);
}

bool single_line(const std::string& s) { return !s.empty() && s.find('\n') == s.size() - 1; }
}  // namespace

TEST_CASE("parse_angle") {
  CHECK(cli::parse_angle("1.5") == 1.5);
  CHECK(near(cli::parse_angle("90deg"), pi / 2, 1e-15));
  CHECK(near(cli::parse_angle("180d"), pi, 1e-15));
  CHECK(near(cli::parse_angle("45°"), pi / 4, 1e-15));
  CHECK(cli::parse_angle(" -0.25 ") == -0.25);
  CHECK_THROWS_AS(cli::parse_angle("abc"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_angle("deg"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_angle("1.0rad"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_angle("inf"), std::invalid_argument);
}

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.25) == "0.25");
  CHECK(cli::format_number(2 * std::numbers::sqrt2) == "2.82842712475");
  CHECK(cli::format_number(-0.0) == "0");
}

TEST_CASE("simulate examples") {
  auto r = run({"simulate", "--scenario", "B", "--theta-l", "0", "--theta-r", "90deg"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(first_row(r.out).at("p00")) == doctest::Approx(0.25).epsilon(1e-12));

  r = run({"simulate", "--scenario", "C", "--theta-l", "90deg", "--theta-r", "90deg", "--mu", "1", "--lambda-l",
           "1.5707963267948966", "--lambda-r", "0"});
  REQUIRE(r.code == 0);
  const auto row = first_row(r.out);
  CHECK(std::stod(row.at("p00")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(std::stod(row.at("mu_lambda")) - pi / 2) <= rounding_bound(pi / 2));

  const auto b = run({"simulate", "--scenario", "B", "--theta-l", "0.3", "--theta-r", "-1.1"});
  for (const char* flux : {"0", "1.7", "-4"}) {
    const auto ab = run({"simulate", "--scenario", "AB", "--theta-l", "0.3", "--theta-r", "-1.1", "--flux", flux});
    REQUIRE(ab.code == 0);
    auto rb = first_row(b.out), rab = first_row(ab.out);
    for (const char* col : {"p00", "p01", "p10", "p11", "expectation"}) CHECK(rb.at(col) == rab.at(col));
  }
}

TEST_CASE("simulate reports S from four settings") {
  const auto r = run({"simulate", "--scenario", "B", "--theta-l", "0", "--theta-r", "45deg", "--theta-lp", "90deg",
                      "--theta-rp", "135deg"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(first_row(r.out).at("s")) == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-11));
}

TEST_CASE("mode-mismatched flags are usage errors") {
  const std::vector<std::vector<std::string>> bad{
      {"simulate", "--scenario", "C", "--mu", "1", "--flux", "2"},
      {"simulate", "--scenario", "B", "--lambda-l", "1"},
      {"simulate", "--scenario", "AB", "--mu", "1", "--flux", "2"},
      {"simulate", "--scenario", "A", "--flux", "2"},
      {"simulate", "--scenario", "A", "--i-u-l", "2"},
      {"simulate", "--scenario", "C"},
      {"simulate", "--scenario", "AB"},
      {"simulate", "--scenario", "B", "--theta-lp", "1"},
  };
  for (const auto& args : bad) {
    const auto r = run(args);
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.out.empty());
    CHECK(single_line(r.err));
  }
  const auto r = run({"simulate", "--scenario", "C", "--mu", "1", "--flux", "2"});
  CHECK(r.err.find("--flux") != std::string::npos);
}

TEST_CASE("parse errors are usage errors") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"simulate"},
           {"simulate", "--scenario", "D"},
           {"simulate", "--scenario", "B", "--theta-l", "north"},
           {"sweep", "--format", "xml"},
           {"sweep", "--points", "1"},
           {"sweep", "--min", "2", "--max", "1"},
           {"optimize", "--mu-lambda", "0.1", "--mu", "2"},
           {"optimize", "--method", "newton"},
       }) {
    const auto r = run(args);
    CHECK(r.code == cli::kExitUsage);
    CHECK(single_line(r.err));
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep examples") {
  auto r = run({"sweep", "--min", "0", "--max", "3.141592653589793", "--points", "3"});
  REQUIRE(r.code == 0);
  auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 5);  // header, 3 rows, trailing empty
  CHECK(lines[0] == cli::kSweepColumns);
  CHECK(lines[4].empty());
  CHECK(r.out.find('\r') == std::string::npos);
  const double want_ml[] = {0.0, pi / 2, pi};
  for (int k = 0; k < 3; ++k) {
    const auto v = split(lines[1 + k], ',');
    CHECK(std::stod(v[0]) == doctest::Approx(want_ml[k]).epsilon(1e-11));
    CHECK(std::stod(v[2]) == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-11));
  }

  r = run({"sweep", "--min", "0", "--max", "0.7853981633974483", "--points", "2"});
  REQUIRE(r.code == 0);
  lines = split(r.out, '\n');
  CHECK(std::stod(split(lines[2], ',')[2]) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-11));
}

TEST_CASE("sweep records") {
  cli::SweepSpec spec;
  spec.points = 41;
  const auto recs = cli::compute_sweep(spec);
  REQUIRE(recs.size() == 41);
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& r = recs[k];
    if (k) CHECK(r.mu_lambda > recs[k - 1].mu_lambda);
    CHECK(near(r.s_paper, std::numbers::sqrt2 + std::numbers::sqrt2 * std::abs(r.c)));
    CHECK(near(r.c, std::cos(2 * r.mu_lambda)));
    CHECK(near(r.s_max_analytic, 2 * std::sqrt(1 + r.c * r.c)));
    CHECK(r.s_max_grid <= r.s_max_analytic + 1e-6);
    CHECK(r.s_paper <= r.s_max_grid + 1e-6);
    CHECK(near(r.s_max_grid, r.s_max_analytic, 1e-6));
    CHECK(near(r.theta_R_opt, std::atan(r.c)));
  }
}

TEST_CASE("sweep csv round trip") {
  // 12 significant digits recover each value to within half a unit in the last printed digit
  cli::SweepSpec spec;
  spec.points = 17;
  spec.mu_lambda_min = -0.4;
  spec.mu_lambda_max = 2.9;
  const auto recs = cli::compute_sweep(spec);
  std::ostringstream csv;
  cli::write_sweep(recs, cli::Format::Csv, csv);
  const auto lines = split(csv.str(), '\n');
  REQUIRE(lines.size() == recs.size() + 2);
  std::size_t beyond_1e12 = 0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto v = split(lines[k + 1], ',');
    REQUIRE(v.size() == 6);
    const auto& r = recs[k];
    const double want[] = {r.mu_lambda, r.c, r.s_paper, r.s_max_analytic, r.s_max_grid, r.theta_R_opt};
    for (std::size_t j = 0; j < 6; ++j) {
      const double got = std::stod(v[j]);
      CHECK(std::abs(got - want[j]) <= rounding_bound(want[j]));
      if (std::abs(got - want[j]) > 1e-12) ++beyond_1e12;
    }
  }
  // values with magnitude >= 1 cannot meet 1e-12 absolute at this width
  MESSAGE("round-trip errors above 1e-12: " << beyond_1e12 << " of " << 6 * recs.size());
}

TEST_CASE("sweep json mirrors csv") {
  const auto csv = run({"sweep", "--points", "4", "--roles", "paper-literal"});
  const auto js = run({"sweep", "--points", "4", "--roles", "paper-literal", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  const auto lines = split(csv.out, '\n');
  const auto head = split(lines[0], ',');
  for (std::size_t k = 0; k < 4; ++k) {
    const auto vals = split(lines[k + 1], ',');
    const auto& obj = doc[k];
    CHECK(obj.size() == head.size());
    for (std::size_t j = 0; j < head.size(); ++j) {
      REQUIRE(obj.contains(head[j]));
      CHECK(obj[head[j]].is_number());
      CHECK(obj[head[j]].get<double>() == std::stod(vals[j]));
    }
  }
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"sweep", "--points", "7", "--min", "0.1", "--max", "1.3"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> opt{"optimize", "--mu-lambda", "0.3", "--method", "grid"};
  CHECK(run(opt).out == run(opt).out);
}

TEST_CASE("sweep budget") {
  auto r = run({"sweep", "--points", "10", "--budget", "1000"});
  CHECK(r.code != 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("--budget") != std::string::npos);
  cli::SweepSpec spec;
  spec.budget = 10;
  CHECK_THROWS_AS(cli::compute_sweep(spec), BudgetExceeded);
}

TEST_CASE("optimize examples") {
  auto r = run({"optimize", "--mu-lambda", "0", "--method", "analytic"});
  REQUIRE(r.code == 0);
  auto row = first_row(r.out);
  CHECK(std::stod(row.at("theta_l")) == 0.0);
  CHECK(std::stod(row.at("theta_r")) == doctest::Approx(pi / 4).epsilon(1e-11));
  CHECK(std::stod(row.at("theta_lp")) == doctest::Approx(pi / 2).epsilon(1e-11));
  CHECK(std::stod(row.at("theta_rp")) == doctest::Approx(3 * pi / 4).epsilon(1e-11));
  CHECK(std::stod(row.at("s")) == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-11));
  CHECK(row.at("evaluations") == "0");

  r = run({"optimize", "--mu-lambda", "0.7853981633974483", "--method", "grid"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(std::stod(first_row(r.out).at("s")) - 2.0) <= 1e-6);
  CHECK(std::stoull(first_row(r.out).at("evaluations")) == GridSpec{}.evaluations());

  const auto g = first_row(run({"optimize", "--mu-lambda", "0.3", "--method", "grid"}).out);
  const auto a = first_row(run({"optimize", "--mu-lambda", "0.3", "--method", "analytic"}).out);
  CHECK(std::abs(std::stod(g.at("s")) - std::stod(a.at("s"))) <= 1e-6);

  // mu and lambdas combine to the same product
  const auto parts = first_row(run({"optimize", "--mu", "2", "--lambda-l", "0.25", "--lambda-r", "0.1"}).out);
  CHECK(std::stod(parts.at("mu_lambda")) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(parts.at("s") == a.at("s"));

  const auto lit = first_row(run({"optimize", "--mu-lambda", "0.3", "--roles", "paper-literal"}).out);
  CHECK(lit.at("s") == a.at("s"));
}

TEST_CASE("verify") {
  auto r = run({"verify", "--budget", "20000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("entangled.scenario_c_closed_form") != std::string::npos);

  r = run({"verify", "--budget", "20000", "--inject-fault", "scenario-c-sign"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.out.find("FAIL  entangled.scenario_c_closed_form") != std::string::npos);
}
