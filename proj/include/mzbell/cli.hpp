#pragma once

// Command-line front end: simulate, sweep, optimize, verify.
//
// Exit codes: 0 success, 1 invariant or verification failure, 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzbell/chsh.hpp"
#include "mzbell/oracle.hpp"

namespace mzbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Csv, Json };

// Radians, or degrees with a "deg", "d" or degree-sign suffix ("90deg"). Throws
// std::invalid_argument on anything else.
double parse_angle(std::string_view text);

// printf("%.12g") in the C locale.
std::string format_number(double x);

struct SweepRecord {
  double mu_lambda = 0.0;
  double c = 0.0;
  double s_paper = 0.0;
  double s_max_analytic = 0.0;
  double s_max_grid = 0.0;
  double theta_R_opt = 0.0;
};

inline constexpr std::string_view kSweepColumns = "mu_lambda,c,s_paper,s_max_analytic,s_max_grid,theta_R_opt";

struct SweepSpec {
  double mu_lambda_min = 0.0;
  double mu_lambda_max = 3.141592653589793;
  int points = 101;
  RoleAssignment roles = RoleAssignment::standard();
  GridSpec grid;
  std::uint64_t budget = 1'000'000'000;  // total objective evaluations
};

// Ascending in mu_lambda. Throws std::invalid_argument on bad bounds or point count and
// BudgetExceeded when points * grid evaluations exceeds the budget.
std::vector<SweepRecord> compute_sweep(const SweepSpec& spec);

void write_sweep(const std::vector<SweepRecord>& records, Format format, std::ostream& out);

// Entry point shared by the executable and the tests; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mzbell::cli
