#include "mzbell/optics.hpp"

#include <cmath>
#include <numbers>

namespace mzbell {

namespace {
constexpr Amplitude kI{0.0, 1.0};
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kCustomTolerance = 1e-9;
}  // namespace

Complex2Matrix beam_splitter() {
  return Complex2Matrix{kInvSqrt2, kI * kInvSqrt2,
                        kI * kInvSqrt2, kInvSqrt2};
}

Complex2Matrix phase_retarder(double theta) {
  return Complex2Matrix::diagonal({std::polar(1.0, theta), 1.0});
}

Complex2Matrix mach_zehnder(double theta) {
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  return Complex2Matrix{-s, c,
                        c, s};
}

Amplitude mach_zehnder_global_factor(double theta) {
  return kI * std::polar(1.0, theta / 2.0);
}

Complex2Matrix path_phase_operator(double upper_integral, double lower_integral, double mu) {
  return Complex2Matrix::diagonal(
      {std::polar(1.0, mu * upper_integral), std::polar(1.0, -mu * lower_integral)});
}

Amplitude spin_loop_phase(Spin s, double mu, double lambda) {
  return std::polar(1.0, -static_cast<double>(sign(s)) * mu * lambda);
}

Complex2Matrix custom_beam_splitter(const std::array<Amplitude, 4>& row_major) {
  const Complex2Matrix m{row_major[0], row_major[1], row_major[2], row_major[3]};
  const double dev = unitarity_deviation(m);
  if (!(dev <= kCustomTolerance)) throw NonUnitaryError(dev);
  return m;
}

std::array<Amplitude, 4> polarizing_beam_splitter_coefficients(double theta_left, double theta_right) {
  const double sl = std::sin(theta_left / 2.0);
  const double cl = std::cos(theta_left / 2.0);
  const double sr = std::sin(theta_right / 2.0);
  const double cr = std::cos(theta_right / 2.0);
  return {kInvSqrt2 * -sl, kInvSqrt2 * -kI * sr,
          kInvSqrt2 * kI * cl, kInvSqrt2 * cr};
}

std::pair<PortVector2, PortVector2> spin_eigenstates(double theta_n) {
  const Amplitude e = std::polar(1.0, -theta_n);
  return {PortVector2({-kInvSqrt2 * e, kInvSqrt2}),
          PortVector2({kInvSqrt2 * e, kInvSqrt2})};
}

}  // namespace mzbell
