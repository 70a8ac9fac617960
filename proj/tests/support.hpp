#pragma once

#include <cmath>
#include <complex>

#include "mzbell/entangled.hpp"

namespace testing {

inline bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
inline bool near(std::complex<double> a, std::complex<double> b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

inline double max_diff(const mzbell::DetectionDistribution& a, const mzbell::DetectionDistribution& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(a.p[k] - b.p[k]));
  return m;
}

}  // namespace testing
