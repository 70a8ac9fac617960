#pragma once

// Interferometer components acting on one quanton's two-port space.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "mzbell/linalg.hpp"

namespace mzbell {

// Spin orientation label s = +1 (up) or -1 (down).
enum class Spin : int { Up = +1, Down = -1 };

constexpr int sign(Spin s) { return static_cast<int>(s); }
constexpr Spin flipped(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

// Symmetric lossless beam splitter: real reflection, imaginary transmission.
//   (1/sqrt2) [[1, i], [i, 1]]
Complex2Matrix beam_splitter();

// diag(e^{i theta}, 1): the retarder sits on the port-0 arm.
Complex2Matrix phase_retarder(double theta);

// Phase-stripped Mach-Zehnder matrix
//   [[-sin(theta/2), cos(theta/2)], [cos(theta/2), sin(theta/2)]].
// The composition beam_splitter() * phase_retarder(t) * beam_splitter()
// equals i e^{i t/2} * mach_zehnder(-t); the sign of the retarder angle is
// the only difference and detection probabilities are identical.
Complex2Matrix mach_zehnder(double theta);

// The global factor i e^{i theta/2} stripped by mach_zehnder().
Amplitude mach_zehnder_global_factor(double theta);

// diag(e^{i mu I_u}, e^{-i mu I_d}) for upper/lower arm line integrals.
// A closed loop has I_u - I_d = lambda; with the lower arm traversed in
// reverse (I_d = -I_d') the diagonal ratio is e^{i mu lambda}.
Complex2Matrix path_phase_operator(double upper_integral, double lower_integral, double mu);

// Phase e^{-i s mu lambda} picked up by a spin-s dipole carrier after one
// loop around a line source with loop integral lambda. The same call serves
// the electric-dipole dual (mu -> d, lambda_E -> lambda_B).
Amplitude spin_loop_phase(Spin s, double mu, double lambda);

class NonUnitaryError : public std::runtime_error {
 public:
  explicit NonUnitaryError(double deviation)
      : std::runtime_error("beam splitter coefficients are not unitary (deviation " +
                           std::to_string(deviation) + ")"),
        deviation_(deviation) {}

  // max |(M^dagger M - I)_{rc}|
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

// Beam splitter from explicit row-major coefficients {r0, t1, t0, r1}.
// Throws NonUnitaryError unless unitary at 1e-9; never rescales.
Complex2Matrix custom_beam_splitter(const std::array<Amplitude, 4>& row_major);

// Polarizing beam-splitter coefficients parameterized by both retarder
// angles, in the row-major layout accepted by custom_beam_splitter():
//   (1/sqrt2) [[-sin(tL/2), -i sin(tR/2)], [i cos(tL/2), cos(tR/2)]]
// Column norms are (sin^2 + cos^2)/2 mixes of two angles, so these are not
// unitary in general.
std::array<Amplitude, 4> polarizing_beam_splitter_coefficients(double theta_left, double theta_right);

// Instantaneous spin eigenstates along a direction at angle theta_n from x:
//   up   = (1/sqrt2) (-e^{-i theta}, 1)
//   down = (1/sqrt2) ( e^{-i theta}, 1)
std::pair<PortVector2, PortVector2> spin_eigenstates(double theta_n);

}  // namespace mzbell
