#pragma once

// Independent checks: explicit-matrix recomputation of every scenario,
// exhaustive search for the CHSH maximum, and finite-difference
// stationarity at candidate optima.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzbell/chsh.hpp"
#include "mzbell/entangled.hpp"

namespace mzbell {

enum class Scenario { A, B, C, AB };

struct ScenarioDescriptor {
  Scenario scenario = Scenario::B;
  double theta_left = 0.0;
  double theta_right = 0.0;
  std::optional<TopoPhaseSpec> topo;
};

// Builds each stage as a dense 4x4 matrix, multiplies the chain per spin
// branch, sums the branches and reads out. Shares no code with the
// branch-state pipelines or the closed forms.
DetectionDistribution brute_force_distribution(const ScenarioDescriptor& scenario);

struct GridSpec {
  int points_per_angle = 24;
  int refinement_rounds = 4;
  double shrink_factor = 0.25;
  std::uint64_t budget = 5'000'000;

  std::uint64_t evaluations() const;
  // Throws std::invalid_argument on an ill-formed spec.
  void validate() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t requested, std::uint64_t budget)
      : std::runtime_error("grid search needs " + std::to_string(requested) +
                           " evaluations, budget is " + std::to_string(budget)),
        requested_(requested) {}
  std::uint64_t requested() const { return requested_; }

 private:
  std::uint64_t requested_;
};

struct SearchResult {
  BellAngles best_angles;
  double best_s = 0.0;
  std::uint64_t evaluations = 0;
  std::vector<double> round_best;  // incumbent after each round
};

// Round 0 scans [0, 2pi)^4; each refinement round rescans a window around
// the incumbent whose half-width shrinks by shrink_factor per round
// (pi * shrink^k); the window grid always contains the incumbent. Ties go
// to the lexicographically smaller angle tuple.
// Throws BudgetExceeded before evaluating anything if the grid needs more
// than `budget` evaluations.
SearchResult grid_search_max_S(double c, const RoleAssignment& roles, const GridSpec& grid = {});

// Best of an explicit candidate list, same tie rule.
SearchResult search_candidates(double c, const RoleAssignment& roles, std::span<const BellAngles> candidates);

enum class Stationarity { Stationary, NotStationary, Skipped };

std::string_view to_string(Stationarity s);

struct StationarityReport {
  Stationarity outcome = Stationarity::Skipped;
  std::array<double, 4> gradient{};  // central differences, slot order
  double threshold = 0.0;
};

// Central differences with step h; each must be at most 10 h^2 max(1, |S|).
// Skipped when either absolute-value argument of S is within 10 h of zero.
// Requires h > 0.
StationarityReport stationarity_report(const BellAngles& angles, double c, const RoleAssignment& roles, double h);

inline Stationarity stationarity_check(const BellAngles& angles, double c, const RoleAssignment& roles, double h) {
  return stationarity_report(angles, c, roles, h).outcome;
}

}  // namespace mzbell
