#pragma once

#include "logdecay/core.hpp"

#include <cstdint>
#include <random>

namespace logdecay {

/// Engine used everywhere a seed is accepted. Results are reproducible for a
/// given seed and standard library.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'1a6c'0e3eULL;

/// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)).
template <typename Real>
VectorC<Real> complex_gaussian(Eigen::Index n, Rng &rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  VectorC<Real> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex<Real>(Real(re), Real(im));
  }
  return v;
}

/// Uniform on the unit sphere of C^n (normalized complex Gaussian).
template <typename Real>
VectorC<Real> random_unit_vector(Eigen::Index n, Rng &rng) {
  VectorC<Real> v = complex_gaussian<Real>(n, rng);
  while (v.norm() == Real(0))
    v = complex_gaussian<Real>(n, rng);
  return v / v.norm();
}

template <typename Real>
MatrixC<Real> complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  MatrixC<Real> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex<Real>(Real(re), Real(im));
    }
  return m;
}

} // namespace logdecay
