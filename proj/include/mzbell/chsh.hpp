#pragma once

// Expectation values and the CHSH combination
//   S = |E(a, b) - E(a, b')| + |E(a', b) + E(a', b')|
// with E(x, y) = -cos x cos y - sin x sin y * c and c = cos(2 mu lambda).

#include <array>
#include <numbers>
#include <string_view>

#include "mzbell/entangled.hpp"

namespace mzbell {

struct BellAngles {
  double theta_l = 0.0;
  double theta_r = 0.0;
  double theta_lp = 0.0;
  double theta_rp = 0.0;

  std::array<double, 4> as_array() const { return {theta_l, theta_r, theta_lp, theta_rp}; }
  static BellAngles from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

  auto operator<=>(const BellAngles&) const = default;
};

enum class AngleSlot { ThetaL = 0, ThetaR = 1, ThetaLp = 2, ThetaRp = 3 };

// Which angle slot feeds each CHSH role (a, a', b, b').
class RoleAssignment {
 public:
  // Throws std::invalid_argument unless the four slots are distinct.
  RoleAssignment(AngleSlot a, AngleSlot a_prime, AngleSlot b, AngleSlot b_prime);

  // Literal argument order: |E(tL,tR) - E(tL,tL')| + |E(tR',tR) + E(tR',tL')|,
  // i.e. a = tL, a' = tR', b = tR, b' = tL'.
  static RoleAssignment paper_literal();
  // a = tL, a' = tL', b = tR, b' = tR'.
  static RoleAssignment standard();

  std::array<double, 4> roles(const BellAngles& angles) const;  // {a, a', b, b'}
  // Inverse of roles().
  BellAngles place(const std::array<double, 4>& role_values) const;
  const std::array<AngleSlot, 4>& slots() const { return slots_; }
  std::string_view name() const;

  bool operator==(const RoleAssignment&) const = default;

 private:
  std::array<AngleSlot, 4> slots_;
};

// p(D0',D0) - p(D0',D1) - p(D1',D0) + p(D1',D1)
double expectation_from_distribution(const DetectionDistribution& d);

// Requires c in [-1, 1]; throws std::invalid_argument otherwise.
double expectation_closed_form(double theta_l, double theta_r, double c);

double chsh_S(const BellAngles& angles, double c, const RoleAssignment& roles);

// sqrt2 + sqrt2 |cos(2 mu lambda)|: S at (0, pi/4, 3pi/4, pi/2) under the
// paper-literal roles.
double paper_curve_S(double mu_lambda);

inline constexpr BellAngles kPaperAngles{0.0, std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 4.0,
                                         std::numbers::pi / 2.0};

// (0, arctan c, pi/2, pi - arctan c) with c = cos(2 mu lambda); these reach
// 2 sqrt(1 + c^2) under the standard roles.
BellAngles analytic_optimal_angles(double mu_lambda);
// The same role values placed into the slots used by `roles`.
BellAngles analytic_optimal_angles(double mu_lambda, const RoleAssignment& roles);

// 2 sqrt(1 + c^2), the largest S over all angles for correlation
// contrast c (Horodecki bound for the diag(1, c) correlation block).
double max_S(double c);

}  // namespace mzbell
