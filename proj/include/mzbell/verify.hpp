#pragma once

// Invariant suites run by `mzbell verify`. Each suite reports the worst
// residual it saw against its tolerance.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mzbell {

// Deliberate defects used to check that the suites can fail.
enum class Fault {
  None,
  ScenarioCSign,  // flips the sign of the cos(2 mu lambda) term in the scenario C closed form
};

struct VerifyOptions {
  // Upper bound on random draws in any one suite.
  std::uint64_t sample_budget = 1'000'000;
  Fault fault = Fault::None;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t checks = 0;
  double seconds = 0.0;
};

std::vector<SuiteResult> run_verification(const VerifyOptions& options = {});

// One line per suite.
void print_results(const std::vector<SuiteResult>& results, std::ostream& out);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace mzbell
