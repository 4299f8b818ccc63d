#pragma once

#include "logdecay/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace logdecay {

/// Eigenpairs of a Hermitian matrix; values ascending, vectors as columns.
template <typename Real>
struct EigenSystem {
  VectorR<Real> values;
  MatrixC<Real> vectors;
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const MatrixC<Real> &a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j)
        sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

} // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian input.
///
/// The input is symmetrized first. Each rotation removes the phase of the
/// pivot, then applies the classical real rotation. Converged once the
/// off-diagonal Frobenius mass is at most tol * ||H||_F; gives up after
/// 100 sweeps with NumericalFailure carrying the residual.
template <typename Real>
EigenSystem<Real> hermitian_eigen(const MatrixC<Real> &h, Real tol = Real(1e-14)) {
  require_operator(h, "hermitian_eigen");
  constexpr int kMaxSweeps = 100;
  const Eigen::Index n = h.rows();

  MatrixC<Real> a = hermitian_part(h);
  for (Eigen::Index i = 0; i < n; ++i)
    a(i, i) = std::real(a(i, i));
  MatrixC<Real> v = MatrixC<Real>::Identity(n, n);

  const Real scale = a.norm();
  const Real target = std::max(tol, std::numeric_limits<Real>::epsilon()) * scale;
  const Real tiny = std::numeric_limits<Real>::min();

  Real off = detail::off_diagonal_norm(a);
  int sweep = 0;
  for (; sweep < kMaxSweeps && off > target; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex<Real> apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag <= tiny)
          continue;
        const Complex<Real> phase = apq / mag;
        const Complex<Real> phase_c = std::conj(phase);
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        const Real theta = (aqq - app) / (2 * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Real c = 1 / std::sqrt(t * t + 1);
        const Real s = t * c;

        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex<Real> xp = a(k, p), xq = a(k, q);
          a(k, p) = c * xp - s * phase_c * xq;
          a(k, q) = s * xp + c * phase_c * xq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex<Real> yp = a(p, k), yq = a(q, k);
          a(p, k) = c * yp - s * phase * yq;
          a(q, k) = s * yp + c * phase * yq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex<Real> xp = v(k, p), xq = v(k, q);
          v(k, p) = c * xp - s * phase_c * xq;
          v(k, q) = s * xp + c * phase_c * xq;
        }
        a(p, q) = Complex<Real>(0);
        a(q, p) = Complex<Real>(0);
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
      }
    }
    off = detail::off_diagonal_norm(a);
  }
  if (off > target || !std::isfinite(off))
    throw NumericalFailure("hermitian_eigen: no convergence after " +
                               std::to_string(sweep) + " sweeps, off-diagonal residual " +
                               std::to_string(static_cast<double>(off)),
                           static_cast<double>(off));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  EigenSystem<Real> out{VectorR<Real>(n), MatrixC<Real>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = std::real(a(src, src));
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

/// lambda_min and its eigenvector; ties resolve to the solver's first column.
template <typename Real>
std::pair<Real, VectorC<Real>> min_eigenpair(const MatrixC<Real> &h) {
  const auto es = hermitian_eigen(h);
  return {es.values(0), es.vectors.col(0)};
}

template <typename Real>
std::pair<Real, VectorC<Real>> max_eigenpair(const MatrixC<Real> &h) {
  const auto es = hermitian_eigen(h);
  const Eigen::Index last = es.values.size() - 1;
  return {es.values(last), es.vectors.col(last)};
}

/// Reduces to upper Hessenberg form by Householder reflections (similarity).
template <typename Real>
MatrixC<Real> hessenberg(MatrixC<Real> h) {
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    VectorC<Real> x = h.block(k + 1, k, len, 1);
    const Real xnorm = x.norm();
    if (xnorm == 0)
      continue;
    const Complex<Real> x0 = x(0);
    const Complex<Real> alpha =
        -(std::abs(x0) > 0 ? x0 / std::abs(x0) : Complex<Real>(1)) * xnorm;
    x(0) -= alpha;
    const Real vnorm = x.norm();
    if (vnorm == 0)
      continue;
    x /= vnorm;
    // H <- (I - 2vv^H) H (I - 2vv^H) restricted to the trailing rows/columns.
    auto rows = h.block(k + 1, 0, len, n);
    rows -= Real(2) * x * (x.adjoint() * rows);
    auto cols = h.block(0, k + 1, n, len);
    cols -= Real(2) * (cols * x) * x.adjoint();
    h.block(k + 2, k, len - 1, 1).setZero();
    h(k + 1, k) = alpha;
  }
  return h;
}

/// All eigenvalues (with multiplicity, unordered) by Hessenberg reduction and
/// Wilkinson-shifted complex QR with deflation.
///
/// `tol` is the relative sub-diagonal deflation threshold.
template <typename Real>
std::vector<Complex<Real>>
general_eigenvalues(const MatrixC<Real> &a, Real tol = std::numeric_limits<Real>::epsilon()) {
  require_operator(a, "general_eigenvalues");
  constexpr int kMaxIterPerValue = 100;
  const Eigen::Index n = a.rows();
  MatrixC<Real> h = hessenberg<Real>(a);
  std::vector<Complex<Real>> eig(static_cast<std::size_t>(n));
  const Real thresh = std::max(tol, std::numeric_limits<Real>::epsilon());
  const Real fallback = std::max(h.norm(), std::numeric_limits<Real>::min());

  std::vector<Real> cs(static_cast<std::size_t>(n));
  std::vector<Complex<Real>> ss(static_cast<std::size_t>(n));

  Eigen::Index hi = n - 1;
  int iter = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    Eigen::Index lo = hi;
    for (; lo > 0; --lo) {
      Real ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (ref == 0)
        ref = fallback;
      if (std::abs(h(lo, lo - 1)) <= thresh * ref) {
        h(lo, lo - 1) = Complex<Real>(0);
        break;
      }
    }
    if (lo == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > kMaxIterPerValue)
      throw NumericalFailure("general_eigenvalues: QR iteration did not converge",
                             static_cast<double>(std::abs(h(hi, hi - 1))));

    Complex<Real> mu;
    if (iter % 10 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + std::abs(std::real(h(hi, hi - 1))) +
           (hi - 1 > lo ? std::abs(std::real(h(hi - 1, hi - 2))) : Real(0));
    } else {
      const Complex<Real> p = h(hi - 1, hi - 1), q = h(hi - 1, hi), r = h(hi, hi - 1),
                          d = h(hi, hi);
      const Complex<Real> half = (p - d) * Real(0.5);
      const Complex<Real> disc = std::sqrt(half * half + q * r);
      const Complex<Real> m1 = d + half + disc, m2 = d + half - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    for (Eigen::Index k = lo; k <= hi; ++k)
      h(k, k) -= mu;
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Complex<Real> x = h(k, k), y = h(k + 1, k);
      const Real r = std::hypot(std::abs(x), std::abs(y));
      Real c;
      Complex<Real> s;
      if (r == 0) {
        c = 1;
        s = 0;
      } else if (std::abs(x) == 0) {
        c = 0;
        s = std::conj(y) / std::abs(y);
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[static_cast<std::size_t>(k)] = c;
      ss[static_cast<std::size_t>(k)] = s;
      for (Eigen::Index j = k; j <= hi; ++j) {
        const Complex<Real> u = h(k, j), w = h(k + 1, j);
        h(k, j) = c * u + s * w;
        h(k + 1, j) = -std::conj(s) * u + c * w;
      }
    }
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Real c = cs[static_cast<std::size_t>(k)];
      const Complex<Real> s = ss[static_cast<std::size_t>(k)];
      const Eigen::Index last = std::min(k + 2, hi);
      for (Eigen::Index i = lo; i <= last; ++i) {
        const Complex<Real> u = h(i, k), w = h(i, k + 1);
        h(i, k) = c * u + std::conj(s) * w;
        h(i, k + 1) = -s * u + c * w;
      }
    }
    for (Eigen::Index k = lo; k <= hi; ++k)
      h(k, k) += mu;
  }
  return eig;
}

/// exp(M) by scaling and squaring with the degree-13 diagonal Pade
/// approximant; the scaling exponent comes from the 1-norm.
template <typename Real>
MatrixC<Real> matrix_exp(const MatrixC<Real> &m) {
  require_operator(m, "matrix_exp");
  static constexpr double kCoeff[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double kTheta13 = 5.371920351148152;
  constexpr int kMaxSquarings = 1000;

  const Eigen::Index n = m.rows();
  const Real norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1))
    throw NumericalFailure("matrix_exp: non-finite 1-norm", static_cast<double>(norm1));
  if (norm1 == Real(0))
    return MatrixC<Real>::Identity(m.rows(), m.cols());

  int squarings = 0;
  if (norm1 > Real(kTheta13))
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / Real(kTheta13))));
  if (squarings > kMaxSquarings)
    throw NumericalFailure("matrix_exp: 1-norm " + std::to_string(static_cast<double>(norm1)) +
                               " is beyond the representable range",
                           static_cast<double>(norm1));

  const MatrixC<Real> a = m * std::ldexp(Real(1), -squarings);
  const MatrixC<Real> id = MatrixC<Real>::Identity(n, n);
  const MatrixC<Real> a2 = a * a;
  const MatrixC<Real> a4 = a2 * a2;
  const MatrixC<Real> a6 = a4 * a2;
  auto b = [](int k) { return Real(kCoeff[k]); };

  const MatrixC<Real> inner_u = a6 * (b(13) * a6 + b(11) * a4 + b(9) * a2);
  const MatrixC<Real> u =
      a * (inner_u + b(7) * a6 + b(5) * a4 + b(3) * a2 + b(1) * id);
  const MatrixC<Real> v = a6 * (b(12) * a6 + b(10) * a4 + b(8) * a2) + b(6) * a6 +
                          b(4) * a4 + b(2) * a2 + b(0) * id;

  MatrixC<Real> r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k)
    r = (r * r).eval();

  if (!all_finite(r))
    throw NumericalFailure("matrix_exp: overflow for 1-norm " +
                               std::to_string(static_cast<double>(norm1)),
                           static_cast<double>(norm1));
  return r;
}

/// Largest singular value, sqrt(lambda_max(M^H M)).
template <typename Real>
Real operator_norm(const MatrixC<Real> &m, Real tol = Real(1e-14)) {
  require_operator(m, "operator_norm");
  const MatrixC<Real> gram = m.adjoint() * m;
  const auto es = hermitian_eigen<Real>(gram, tol);
  return std::sqrt(std::max(es.values(es.values.size() - 1), Real(0)));
}

/// Singular values in ascending order (square roots of the Gram eigenvalues).
template <typename Real>
VectorR<Real> singular_values(const MatrixC<Real> &m, Real tol = Real(1e-14)) {
  const MatrixC<Real> gram = m.adjoint() * m;
  VectorR<Real> vals = hermitian_eigen<Real>(gram, tol).values;
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    vals(k) = std::sqrt(std::max(vals(k), Real(0)));
  return vals;
}

} // namespace logdecay
