#include "mzbell/chsh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mzbell {

namespace {
void require_contrast(double c) {
  if (!(c >= -1.0 && c <= 1.0)) throw std::invalid_argument("correlation contrast c must lie in [-1, 1]");
}
}  // namespace

RoleAssignment::RoleAssignment(AngleSlot a, AngleSlot a_prime, AngleSlot b, AngleSlot b_prime)
    : slots_{a, a_prime, b, b_prime} {
  std::array<bool, 4> seen{};
  for (auto s : slots_) {
    const auto k = static_cast<std::size_t>(s);
    if (k >= 4 || seen[k]) throw std::invalid_argument("RoleAssignment must map roles onto four distinct slots");
    seen[k] = true;
  }
}

RoleAssignment RoleAssignment::paper_literal() {
  return {AngleSlot::ThetaL, AngleSlot::ThetaRp, AngleSlot::ThetaR, AngleSlot::ThetaLp};
}

RoleAssignment RoleAssignment::standard() {
  return {AngleSlot::ThetaL, AngleSlot::ThetaLp, AngleSlot::ThetaR, AngleSlot::ThetaRp};
}

std::array<double, 4> RoleAssignment::roles(const BellAngles& angles) const {
  const auto a = angles.as_array();
  return {a[static_cast<std::size_t>(slots_[0])], a[static_cast<std::size_t>(slots_[1])],
          a[static_cast<std::size_t>(slots_[2])], a[static_cast<std::size_t>(slots_[3])]};
}

BellAngles RoleAssignment::place(const std::array<double, 4>& role_values) const {
  std::array<double, 4> a{};
  for (std::size_t k = 0; k < 4; ++k) a[static_cast<std::size_t>(slots_[k])] = role_values[k];
  return BellAngles::from_array(a);
}

std::string_view RoleAssignment::name() const {
  if (*this == paper_literal()) return "paper-literal";
  if (*this == standard()) return "standard";
  return "custom";
}

double expectation_from_distribution(const DetectionDistribution& d) {
  return d.p[0] - d.p[1] - d.p[2] + d.p[3];
}

double expectation_closed_form(double theta_l, double theta_r, double c) {
  require_contrast(c);
  return -std::cos(theta_l) * std::cos(theta_r) - std::sin(theta_l) * std::sin(theta_r) * c;
}

double chsh_S(const BellAngles& angles, double c, const RoleAssignment& roles) {
  const auto [a, a_prime, b, b_prime] = roles.roles(angles);
  return std::abs(expectation_closed_form(a, b, c) - expectation_closed_form(a, b_prime, c)) +
         std::abs(expectation_closed_form(a_prime, b, c) + expectation_closed_form(a_prime, b_prime, c));
}

double paper_curve_S(double mu_lambda) {
  return std::numbers::sqrt2 + std::numbers::sqrt2 * std::abs(std::cos(2.0 * mu_lambda));
}

BellAngles analytic_optimal_angles(double mu_lambda) {
  const double t = std::atan(std::cos(2.0 * mu_lambda));
  return {0.0, t, std::numbers::pi / 2.0, std::numbers::pi - t};
}

BellAngles analytic_optimal_angles(double mu_lambda, const RoleAssignment& roles) {
  return roles.place(RoleAssignment::standard().roles(analytic_optimal_angles(mu_lambda)));
}

double max_S(double c) {
  require_contrast(c);
  return 2.0 * std::sqrt(1.0 + c * c);
}

}  // namespace mzbell
