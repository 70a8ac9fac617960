#pragma once

// Closed-form joint-detection probabilities. Uses <cmath> only; nothing here
// touches the operator pipelines, so the two can check each other.

#include <array>
#include <cmath>

namespace mzbell::closed_form {

// Ordered (D0',D0), (D0',D1), (D1',D0), (D1',D1).
using Probabilities = std::array<double, 4>;

// Source -> retarders -> BS, topological phase absent or symmetric.
inline Probabilities scenario_A(double theta_left, double theta_right) {
  const double half = (theta_left - theta_right) / 2.0;
  const double same = 0.5 * std::cos(half) * std::cos(half);
  const double diff = 0.5 * std::sin(half) * std::sin(half);
  return {same, diff, diff, same};
}

// BS -> retarder -> BS on both sides.
inline Probabilities scenario_B(double theta_left, double theta_right) {
  const double half = (theta_left - theta_right) / 2.0;
  const double same = 0.5 * std::sin(half) * std::sin(half);
  const double diff = 0.5 * std::cos(half) * std::cos(half);
  return {same, diff, diff, same};
}

// Scenario B with a spin-conditioned loop phase; c = cos(2 mu lambda),
// lambda = lambda_L - lambda_R.
inline Probabilities scenario_C(double theta_left, double theta_right, double c) {
  const double mixed = std::cos(theta_left) * std::cos(theta_right) + std::sin(theta_left) * std::sin(theta_right) * c;
  const double same = 0.25 * (1.0 - mixed);
  const double diff = 0.25 * (1.0 + mixed);
  return {same, diff, diff, same};
}

}  // namespace mzbell::closed_form
