#pragma once

// Seeded generators for property checks.

#include <cmath>
#include <numbers>
#include <random>

#include "mzbell/chsh.hpp"
#include "mzbell/linalg.hpp"

namespace mzbell::sampling {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double angle(Rng& rng) { return uniform(rng, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi); }

inline BellAngles bell_angles(Rng& rng) { return {angle(rng), angle(rng), angle(rng), angle(rng)}; }

// e^{i phi} [[a, -conj(b)], [b, conj(a)]], |a|^2 + |b|^2 = 1
inline Complex2Matrix unitary2(Rng& rng) {
  const double chi = uniform(rng, 0.0, std::numbers::pi / 2.0);
  const Amplitude a = std::polar(std::cos(chi), angle(rng));
  const Amplitude b = std::polar(std::sin(chi), angle(rng));
  const Amplitude g = std::polar(1.0, angle(rng));
  return Complex2Matrix{g * a, -g * std::conj(b), g * b, g * std::conj(a)};
}

inline PortVector2 vector2(Rng& rng) {
  return PortVector2({Amplitude(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                      Amplitude(uniform(rng, -1, 1), uniform(rng, -1, 1))});
}

inline JointVector vector4(Rng& rng) {
  JointVector v;
  for (std::size_t k = 0; k < 4; ++k) v[k] = Amplitude(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return v;
}

}  // namespace mzbell::sampling
