#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace logdecay {

template <typename Real>
using Complex = std::complex<Real>;

/// Dense n x n complex matrix. Every operator and derived quantity lives here.
template <typename Real>
using MatrixC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = MatrixC<double>;
using ComplexVector = VectorC<double>;
using RealVector = VectorR<double>;

/// Raised when an iteration fails to converge or a result overflows.
class NumericalFailure : public std::runtime_error {
public:
  NumericalFailure(const std::string &what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  /// Off-diagonal mass, norm or other quantity that triggered the failure.
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Raised on inputs outside an operation's domain (zero vectors, bad params).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The tolerance record shared by every module.
struct Tolerances {
  double absolute = 1e-12;
  double relative = 1e-10;
};

/// <x, y> with the physics-free math convention: linear in x, antilinear in y.
template <typename Real>
Complex<Real> inner(const VectorC<Real> &x, const VectorC<Real> &y) {
  return y.dot(x);
}

template <typename Real>
Real re_inner(const VectorC<Real> &x, const VectorC<Real> &y) {
  return std::real(y.dot(x));
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto v = m(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v)))
        return false;
    }
  return true;
}

/// Checks the square/finite/non-empty invariants of an operator matrix.
template <typename Real>
void require_operator(const MatrixC<Real> &a, const char *who) {
  if (a.rows() < 1 || a.rows() != a.cols())
    throw DomainError(std::string(who) + ": matrix must be square with n >= 1");
  if (!all_finite(a))
    throw DomainError(std::string(who) + ": matrix has non-finite entries");
}

template <typename Real>
MatrixC<Real> hermitian_part(const MatrixC<Real> &a) {
  return (a + a.adjoint()) * Real(0.5);
}

/// [A^H, A] = A^H A - A A^H.
template <typename Real>
MatrixC<Real> self_commutator(const MatrixC<Real> &a) {
  return a.adjoint() * a - a * a.adjoint();
}

} // namespace logdecay
