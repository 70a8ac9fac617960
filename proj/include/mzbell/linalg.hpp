#pragma once

// Fixed-size complex linear algebra for one or two quantons with two ports
// each. Only N = 2 (one quanton) and N = 4 (joint space) are instantiated.
//
// Joint basis ordering is left-port major: index = 2 * i_left + i_right,
// i.e. (0,0), (0,1), (1,0), (1,1).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace mzbell {

using Amplitude = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-12;

template <std::size_t N>
concept PortDimension = (N == 2 || N == 4);

template <std::size_t N>
  requires PortDimension<N>
class Vector {
 public:
  constexpr Vector() = default;
  constexpr explicit Vector(const std::array<Amplitude, N>& amps) : amps_(amps) {}

  static constexpr Vector basis(std::size_t k) {
    Vector v;
    v.amps_.at(k) = 1.0;
    return v;
  }

  constexpr Amplitude& operator[](std::size_t k) { return amps_[k]; }
  constexpr const Amplitude& operator[](std::size_t k) const { return amps_[k]; }
  static constexpr std::size_t size() { return N; }

  const std::array<Amplitude, N>& data() const { return amps_; }

  Vector& operator+=(const Vector& o) {
    for (std::size_t k = 0; k < N; ++k) amps_[k] += o.amps_[k];
    return *this;
  }
  Vector& operator*=(Amplitude s) {
    for (auto& a : amps_) a *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) {
    for (std::size_t k = 0; k < N; ++k) a[k] -= b[k];
    return a;
  }
  friend Vector operator*(Amplitude s, Vector v) { return v *= s; }

  double squared_norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  // Born-rule readout: probability of each basis element.
  std::array<double, N> probabilities() const {
    std::array<double, N> p{};
    for (std::size_t k = 0; k < N; ++k) p[k] = std::norm(amps_[k]);
    return p;
  }

 private:
  std::array<Amplitude, N> amps_{};
};

using PortVector2 = Vector<2>;
using JointVector = Vector<4>;

inline Amplitude inner_product(const PortVector2& a, const PortVector2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// Row = output port, column = input port.
template <std::size_t N>
  requires PortDimension<N>
class Matrix {
 public:
  constexpr Matrix() = default;

  // Row-major list of N*N entries.
  Matrix(std::initializer_list<Amplitude> row_major) {
    if (row_major.size() != N * N) {
      throw std::invalid_argument("Matrix: expected N*N entries");
    }
    std::copy(row_major.begin(), row_major.end(), entries_.begin());
  }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t k = 0; k < N; ++k) m.entries_[k * N + k] = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<Amplitude, N>& d) {
    Matrix m;
    for (std::size_t k = 0; k < N; ++k) m(k, k) = d[k];
    return m;
  }

  constexpr Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * N + col]; }
  constexpr const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * N + col];
  }
  static constexpr std::size_t dimension() { return N; }

  Matrix adjoint() const {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        Amplitude acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) acc += a(r, k) * b(k, c);
        out(r, c) = acc;
      }
    return out;
  }

  friend Vector<N> operator*(const Matrix& m, const Vector<N>& v) {
    Vector<N> out;
    for (std::size_t r = 0; r < N; ++r) {
      Amplitude acc = 0.0;
      for (std::size_t k = 0; k < N; ++k) acc += m(r, k) * v[k];
      out[r] = acc;
    }
    return out;
  }

  friend Matrix operator*(Amplitude s, Matrix m) {
    for (auto& e : m.entries_) e *= s;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < N * N; ++k) a.entries_[k] += b.entries_[k];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < N * N; ++k) a.entries_[k] -= b.entries_[k];
    return a;
  }

  // Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

 private:
  std::array<Amplitude, N * N> entries_{};
};

using Complex2Matrix = Matrix<2>;
using Complex4Matrix = Matrix<4>;

template <std::size_t N>
Vector<N> apply(const Matrix<N>& m, const Vector<N>& v) {
  return m * v;
}

// entry[(i,j),(k,l)] = a[i,k] * b[j,l]
inline Complex4Matrix tensor_product(const Complex2Matrix& a, const Complex2Matrix& b) {
  Complex4Matrix out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

inline JointVector tensor_product(const PortVector2& a, const PortVector2& b) {
  JointVector out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[2 * i + j] = a[i] * b[j];
  return out;
}

// max |(M^dagger M - I)_{rc}|
template <std::size_t N>
double unitarity_deviation(const Matrix<N>& m) {
  return (m.adjoint() * m - Matrix<N>::identity()).max_abs();
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& m, double tol = kDefaultTolerance) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_unitary: tolerance must be positive");
  return unitarity_deviation(m) <= tol;
}

template <std::size_t N>
double max_abs_difference(const Matrix<N>& a, const Matrix<N>& b) {
  return (a - b).max_abs();
}

template <std::size_t N>
double max_abs_difference(const Vector<N>& a, const Vector<N>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace mzbell
