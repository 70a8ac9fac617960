#pragma once

// Two-quanton states from a singlet source and the interferometer
// pipelines built on them.
//
// Beam splitters and retarders act on path only and topological phases never
// flip spin, so the state is kept as at most two spin-labelled branches,
// each a 4-component path amplitude vector. Spin and path are perfectly
// correlated at the source; the detectors see the coherent sum of branches.

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "mzbell/linalg.hpp"
#include "mzbell/optics.hpp"

namespace mzbell {

// Which dipole/field pair the spin-conditioned phase stands for. Only the
// interpretation of mu and lambda changes.
enum class Coupling { AharonovCasher, HeMcKellarWilkens };

// Line source inside each loop; phase e^{-i s mu lambda} per side.
struct SpinConditionedPhase {
  double mu = 0.0;
  double lambda_left = 0.0;
  double lambda_right = 0.0;
  Coupling coupling = Coupling::AharonovCasher;
};

// Solenoid inside each loop; phase e^{-i flux} per quanton regardless of
// spin. The charge is folded into flux.
struct SpinIndependentPhase {
  double flux = 0.0;
};

struct ArmIntegrals {
  double upper = 0.0;
  double lower = 0.0;
};

// Per-arm line integrals for the path-basis operator.
struct PathIntegralPhase {
  double mu = 0.0;
  ArmIntegrals left;
  ArmIntegrals right;
};

using TopoPhaseSpec = std::variant<SpinConditionedPhase, SpinIndependentPhase, PathIntegralPhase>;

std::string_view mode_name(const TopoPhaseSpec& topo);

class ModeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpinBranch {
  Spin left = Spin::Up;
  Spin right = Spin::Down;
  JointVector amplitudes;
};

class TwoQuantonState {
 public:
  static constexpr std::size_t kMaxBranches = 2;

  // Throws std::invalid_argument on more than two branches, repeated spin
  // pairs, or non-finite amplitudes.
  explicit TwoQuantonState(std::vector<SpinBranch> branches);

  const std::vector<SpinBranch>& branches() const { return branches_; }

  // Path operator applied to every branch.
  TwoQuantonState transformed(const Complex4Matrix& op) const;

  // Branch-wise scalar; phase(left, right) picks the factor for each branch.
  template <typename PhaseFn>
  TwoQuantonState with_branch_phases(PhaseFn&& phase) const {
    auto out = branches_;
    for (auto& b : out) b.amplitudes *= phase(b.left, b.right);
    return TwoQuantonState(std::move(out));
  }

  // Exchange left and right quantons (spin labels and path indices).
  TwoQuantonState exchanged() const;

  JointVector detector_amplitudes() const;

  double total_squared_norm() const;

 private:
  std::vector<SpinBranch> branches_;
};

// (|0>_L|1>_R (up, down) - |1>_L|0>_R (down, up)) / sqrt2
TwoQuantonState singlet_source();

// Joint detection probabilities, indexed (left detector, right detector) as
// (D0',D0), (D0',D1), (D1',D0), (D1',D1).
struct DetectionDistribution {
  std::array<double, 4> p{};

  double at(int left_detector, int right_detector) const { return p.at(2 * left_detector + right_detector); }
  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

DetectionDistribution detect(const JointVector& amplitudes);

// Source -> retarders -> [path phase operators] -> beam splitters.
// `topo`, if present, must be PathIntegralPhase.
TwoQuantonState propagate_scenario_A(double theta_left, double theta_right,
                                     const std::optional<TopoPhaseSpec>& topo = std::nullopt);

// In the source-retarder-BS geometry the left detector labelled D0' sits on
// the beam splitter's port-1 exit, so the left index is read mirrored.
DetectionDistribution read_out_source_geometry(const JointVector& amplitudes);

DetectionDistribution run_scenario_A(double theta_left, double theta_right,
                                     const std::optional<TopoPhaseSpec>& topo = std::nullopt);

// Source -> BS -> retarders -> BS on each side.
TwoQuantonState propagate_scenario_B(double theta_left, double theta_right);
DetectionDistribution run_scenario_B(double theta_left, double theta_right);

// Scenario B with a line source inside each loop (SpinConditionedPhase).
TwoQuantonState propagate_scenario_C(double theta_left, double theta_right, const TopoPhaseSpec& topo);
DetectionDistribution run_scenario_C(double theta_left, double theta_right, const TopoPhaseSpec& topo);

// Scenario B with a solenoid inside each loop (SpinIndependentPhase).
TwoQuantonState propagate_scenario_AB(double theta_left, double theta_right, const TopoPhaseSpec& topo);
DetectionDistribution run_scenario_AB(double theta_left, double theta_right, const TopoPhaseSpec& topo);

}  // namespace mzbell
