#include "mzbell/entangled.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mzbell {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_finite_angles(double theta_left, double theta_right) {
  require_finite(theta_left, "theta_left");
  require_finite(theta_right, "theta_right");
}

template <typename Mode>
const Mode& expect_mode(const TopoPhaseSpec& topo, const char* scenario) {
  const auto* mode = std::get_if<Mode>(&topo);
  if (mode == nullptr) {
    throw ModeMismatch(std::string(scenario) + " does not accept topological mode " +
                       std::string(mode_name(topo)));
  }
  return *mode;
}

Complex4Matrix beam_splitter_pair() {
  const auto bs = beam_splitter();
  return tensor_product(bs, bs);
}

Complex4Matrix retarder_pair(double theta_left, double theta_right) {
  return tensor_product(phase_retarder(theta_left), phase_retarder(theta_right));
}

TwoQuantonState first_half_of_mz(double theta_left, double theta_right) {
  require_finite_angles(theta_left, theta_right);
  return singlet_source().transformed(beam_splitter_pair()).transformed(retarder_pair(theta_left, theta_right));
}

}  // namespace

std::string_view mode_name(const TopoPhaseSpec& topo) {
  struct Namer {
    std::string_view operator()(const SpinConditionedPhase&) const { return "spin-conditioned"; }
    std::string_view operator()(const SpinIndependentPhase&) const { return "spin-independent-ab"; }
    std::string_view operator()(const PathIntegralPhase&) const { return "path-integrals"; }
  };
  return std::visit(Namer{}, topo);
}

TwoQuantonState::TwoQuantonState(std::vector<SpinBranch> branches) : branches_(std::move(branches)) {
  if (branches_.size() > kMaxBranches) throw std::invalid_argument("TwoQuantonState: at most two branches");
  if (branches_.size() == 2 && branches_[0].left == branches_[1].left &&
      branches_[0].right == branches_[1].right) {
    throw std::invalid_argument("TwoQuantonState: branch spin pairs must be distinct");
  }
  for (const auto& b : branches_)
    for (std::size_t k = 0; k < 4; ++k)
      if (!std::isfinite(b.amplitudes[k].real()) || !std::isfinite(b.amplitudes[k].imag()))
        throw std::invalid_argument("TwoQuantonState: non-finite amplitude");
}

TwoQuantonState TwoQuantonState::transformed(const Complex4Matrix& op) const {
  auto out = branches_;
  for (auto& b : out) b.amplitudes = op * b.amplitudes;
  return TwoQuantonState(std::move(out));
}

TwoQuantonState TwoQuantonState::exchanged() const {
  auto out = branches_;
  for (auto& b : out) {
    std::swap(b.left, b.right);
    JointVector swapped;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) swapped[2 * j + i] = b.amplitudes[2 * i + j];
    b.amplitudes = swapped;
  }
  return TwoQuantonState(std::move(out));
}

JointVector TwoQuantonState::detector_amplitudes() const {
  JointVector sum;
  for (const auto& b : branches_) sum += b.amplitudes;
  return sum;
}

double TwoQuantonState::total_squared_norm() const {
  double acc = 0.0;
  for (const auto& b : branches_) acc += b.amplitudes.squared_norm();
  return acc;
}

TwoQuantonState singlet_source() {
  constexpr double a = 1.0 / std::numbers::sqrt2;
  return TwoQuantonState({
      SpinBranch{Spin::Up, Spin::Down, a * JointVector::basis(0b01)},
      SpinBranch{Spin::Down, Spin::Up, -a * JointVector::basis(0b10)},
  });
}

DetectionDistribution detect(const JointVector& amplitudes) {
  return DetectionDistribution{amplitudes.probabilities()};
}

TwoQuantonState propagate_scenario_A(double theta_left, double theta_right,
                                     const std::optional<TopoPhaseSpec>& topo) {
  require_finite_angles(theta_left, theta_right);
  auto state = singlet_source().transformed(retarder_pair(theta_left, theta_right));
  if (topo) {
    const auto& arms = expect_mode<PathIntegralPhase>(*topo, "scenario A");
    state = state.transformed(
        tensor_product(path_phase_operator(arms.left.upper, arms.left.lower, arms.mu),
                       path_phase_operator(arms.right.upper, arms.right.lower, arms.mu)));
  }
  return state.transformed(beam_splitter_pair());
}

DetectionDistribution read_out_source_geometry(const JointVector& amplitudes) {
  const auto p = amplitudes.probabilities();
  return DetectionDistribution{{p[2], p[3], p[0], p[1]}};
}

DetectionDistribution run_scenario_A(double theta_left, double theta_right,
                                     const std::optional<TopoPhaseSpec>& topo) {
  return read_out_source_geometry(propagate_scenario_A(theta_left, theta_right, topo).detector_amplitudes());
}

TwoQuantonState propagate_scenario_B(double theta_left, double theta_right) {
  return first_half_of_mz(theta_left, theta_right).transformed(beam_splitter_pair());
}

DetectionDistribution run_scenario_B(double theta_left, double theta_right) {
  return detect(propagate_scenario_B(theta_left, theta_right).detector_amplitudes());
}

TwoQuantonState propagate_scenario_C(double theta_left, double theta_right, const TopoPhaseSpec& topo) {
  const auto& line = expect_mode<SpinConditionedPhase>(topo, "scenario C");
  require_finite(line.mu, "mu");
  require_finite(line.lambda_left, "lambda_left");
  require_finite(line.lambda_right, "lambda_right");
  return first_half_of_mz(theta_left, theta_right)
      .with_branch_phases([&](Spin l, Spin r) {
        return spin_loop_phase(l, line.mu, line.lambda_left) * spin_loop_phase(r, line.mu, line.lambda_right);
      })
      .transformed(beam_splitter_pair());
}

DetectionDistribution run_scenario_C(double theta_left, double theta_right, const TopoPhaseSpec& topo) {
  return detect(propagate_scenario_C(theta_left, theta_right, topo).detector_amplitudes());
}

TwoQuantonState propagate_scenario_AB(double theta_left, double theta_right, const TopoPhaseSpec& topo) {
  const auto& solenoid = expect_mode<SpinIndependentPhase>(topo, "scenario AB");
  require_finite(solenoid.flux, "flux");
  const Amplitude loop = std::polar(1.0, -solenoid.flux);
  return first_half_of_mz(theta_left, theta_right)
      .with_branch_phases([&](Spin, Spin) { return loop * loop; })
      .transformed(beam_splitter_pair());
}

DetectionDistribution run_scenario_AB(double theta_left, double theta_right, const TopoPhaseSpec& topo) {
  return detect(propagate_scenario_AB(theta_left, theta_right, topo).detector_amplitudes());
}

}  // namespace mzbell
