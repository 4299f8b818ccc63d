#pragma once

#include "logdecay/linalg.hpp"
#include "logdecay/operator_props.hpp"
#include "logdecay/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace logdecay {

/// Strictly increasing times starting at 0, at least 3 points.
template <typename Real>
class TimeGrid {
public:
  explicit TimeGrid(std::vector<Real> points) : points_(std::move(points)) {
    if (points_.size() < 3)
      throw DomainError("TimeGrid: at least 3 points required");
    if (points_.front() != Real(0))
      throw DomainError("TimeGrid: first point must be 0");
    for (std::size_t k = 1; k < points_.size(); ++k)
      if (!(points_[k] > points_[k - 1]) || !std::isfinite(points_[k]))
        throw DomainError("TimeGrid: points must be finite and strictly increasing");
  }

  /// n_points uniform samples on [0, t_max].
  static TimeGrid uniform(Real t_max, int n_points) {
    check_span(t_max, n_points);
    std::vector<Real> pts(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k)
      pts[static_cast<std::size_t>(k)] = t_max * Real(k) / Real(n_points - 1);
    return TimeGrid(std::move(pts));
  }

  /// 0, then a geometric run on [1e-7, 1e-2]*t_max, then a linear run up to
  /// t_max. Roughly half the points sit in the geometric run.
  static TimeGrid hybrid(Real t_max, int n_points) {
    check_span(t_max, n_points);
    const int n_geo = (n_points - 1) / 2;
    const int n_lin = n_points - 1 - n_geo;
    const Real lo = Real(1e-7), mid = Real(1e-2);
    std::vector<Real> pts{Real(0)};
    for (int k = 0; k < n_geo; ++k) {
      const Real frac = n_geo == 1 ? Real(1) : Real(k) / Real(n_geo - 1);
      pts.push_back(t_max * lo * std::pow(mid / lo, frac));
    }
    for (int j = 1; j <= n_lin; ++j)
      pts.push_back(t_max * (mid + (Real(1) - mid) * Real(j) / Real(n_lin)));
    return TimeGrid(std::move(pts));
  }

  /// Default grid: 200 hybrid points on [0, 10 / max(m(A), 0.1)].
  static TimeGrid for_operator(const MatrixC<Real> &a, int n_points = 200) {
    const Real m = lower_bound_m(a);
    return hybrid(Real(10) / std::max(m, Real(0.1)), n_points);
  }

  const std::vector<Real> &points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Real operator[](std::size_t k) const { return points_[k]; }
  Real back() const { return points_.back(); }

private:
  static void check_span(Real t_max, int n_points) {
    if (!(t_max > 0) || !std::isfinite(t_max))
      throw DomainError("TimeGrid: t_max must be positive");
    if (n_points < 3)
      throw DomainError("TimeGrid: at least 3 points required");
  }

  std::vector<Real> points_;
};

/// A real function sampled with its first two derivatives. The convexity
/// checks work on this; trajectories and scalar fixtures both produce one.
template <typename Real>
struct SampledCurve {
  std::vector<Real> t;
  std::vector<Real> f;
  std::vector<Real> df;
  std::vector<Real> d2f;

  void validate() const {
    if (t.size() < 3)
      throw DomainError("SampledCurve: at least 3 samples required");
    if (f.size() != t.size() || df.size() != t.size() || d2f.size() != t.size())
      throw DomainError("SampledCurve: column lengths differ");
    for (std::size_t k = 1; k < t.size(); ++k)
      if (!(t[k] > t[k - 1]))
        throw DomainError("SampledCurve: times must be strictly increasing");
  }
};

/// h(t) = |e^{-tA} u0| with analytic h', h'' along a time grid.
template <typename Real>
struct HeightSeries {
  TimeGrid<Real> grid;
  std::vector<Real> h;
  std::vector<Real> h_prime;
  std::vector<Real> h_second;
  std::vector<Real> u_norm_check;
  VectorC<Real> u0;

  SampledCurve<Real> curve() const { return {grid.points(), h, h_prime, h_second}; }
};

enum class VerdictKind { differential_logconvex, discrete_logconvex, strict_decrease, slope_monotone };

constexpr std::string_view to_string(VerdictKind k) {
  switch (k) {
  case VerdictKind::differential_logconvex: return "differential-logconvex";
  case VerdictKind::discrete_logconvex: return "discrete-logconvex";
  case VerdictKind::strict_decrease: return "strict-decrease";
  case VerdictKind::slope_monotone: return "slope-monotone";
  }
  return "unknown";
}

/// `margin` is the worst slack of the defining inequality and `threshold`
/// the tolerance it was held to (holds iff margin >= -threshold). The
/// witness lists the time(s) where the worst slack occurs.
template <typename Real>
struct ConvexityVerdict {
  VerdictKind kind;
  Status status;
  Real margin;
  Real threshold;
  std::vector<Real> witness;

  bool holds() const { return status == Status::holds; }
};

template <typename Real>
struct NormSeries {
  TimeGrid<Real> grid;
  std::vector<Real> E;
  Real E_prime_zero_estimate;
  Real spectral_abscissa;
  /// log(E(t_max)) / t_max; tends to -spectral_abscissa for large t_max.
  Real long_time_rate;
};

template <typename Real>
struct DerivativeAtZero {
  Real analytic;
  Real numeric_limit;
};

/// Steps used for every one-sided derivative estimate at t = 0.
inline constexpr std::array<double, 3> kRichardsonSteps{1e-3, 5e-4, 2.5e-4};

/// Richardson extrapolation of the forward difference (f(d) - f(0)) / d over
/// d, d/2, d/4; the error is O(d^3).
template <typename Real, typename F>
Real one_sided_derivative(F &&f, Real f0) {
  std::array<Real, 3> diff{};
  for (std::size_t k = 0; k < 3; ++k) {
    const Real d = Real(kRichardsonSteps[k]);
    diff[k] = (f(d) - f0) / d;
  }
  return (Real(8) * diff[2] - Real(6) * diff[1] + diff[0]) / Real(3);
}

namespace detail {

template <typename Real>
void require_initial(const MatrixC<Real> &a, const VectorC<Real> &u0, const char *who) {
  require_operator(a, who);
  if (u0.size() != a.rows())
    throw DomainError(std::string(who) + ": u0 dimension mismatch");
  if (!(u0.norm() > 0))
    throw DomainError(std::string(who) + ": u0 must be nonzero");
}

template <typename Real>
Real interpolation_slack(const std::vector<Real> &t, const std::vector<Real> &logf,
                         std::size_t r, std::size_t s, std::size_t q) {
  const Real span = t[q] - t[r];
  const Real interp = ((t[q] - t[s]) * logf[r] + (t[s] - t[r]) * logf[q]) / span;
  return interp - logf[s];
}

} // namespace detail

/// u(t) = e^{-tA} u0.
template <typename Real>
VectorC<Real> evolve(const MatrixC<Real> &a, const VectorC<Real> &u0, Real t) {
  detail::require_initial(a, u0, "evolve");
  if (!(t >= 0))
    throw DomainError("evolve: t must be >= 0");
  if (t == 0)
    return u0;
  const MatrixC<Real> step = -t * a;
  return matrix_exp<Real>(step) * u0;
}

/// Samples h, h', h'' from u(t) through the closed-form derivatives
///   h'  = -Re<Au, u> / |u|
///   h'' = (Re<A^2 u, u> + |Au|^2) / |u| - (Re<Au, u>)^2 / |u|^3.
/// `u_norm_check` recomputes |u(t)| through two half steps.
template <typename Real>
HeightSeries<Real> height_series(const MatrixC<Real> &a, const VectorC<Real> &u0,
                                 const TimeGrid<Real> &grid) {
  detail::require_initial(a, u0, "height_series");
  HeightSeries<Real> out{grid, {}, {}, {}, {}, u0};
  const std::size_t n = grid.size();
  out.h.reserve(n);
  out.h_prime.reserve(n);
  out.h_second.reserve(n);
  out.u_norm_check.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real t = grid[k];
    VectorC<Real> u;
    Real check;
    if (t == 0) {
      u = u0;
      check = u0.norm();
    } else {
      const MatrixC<Real> full = -t * a;
      const MatrixC<Real> half = Real(-0.5) * t * a;
      u = matrix_exp<Real>(full) * u0;
      const MatrixC<Real> half_exp = matrix_exp<Real>(half);
      check = (half_exp * (half_exp * u0)).norm();
    }
    const VectorC<Real> au = a * u;
    const VectorC<Real> a2u = a * au;
    const Real nu = u.norm();
    if (!(nu > 0) || !std::isfinite(nu))
      throw NumericalFailure("height_series: h(t) <= 0 at t = " +
                                 std::to_string(static_cast<double>(t)),
                             static_cast<double>(nu));
    const Real re1 = re_inner(au, u);
    out.h.push_back(nu);
    out.h_prime.push_back(-re1 / nu);
    out.h_second.push_back((re_inner(a2u, u) + au.squaredNorm()) / nu -
                           re1 * re1 / (nu * nu * nu));
    out.u_norm_check.push_back(check);
  }
  return out;
}

/// f f'' - f'^2 >= 0 on the grid. The threshold is tol * max(1, S) where S
/// is the largest magnitude of the cancelled terms f|f''| + f'^2.
template <typename Real>
ConvexityVerdict<Real> check_differential_logconvexity(const SampledCurve<Real> &c,
                                                       Real tol = Real(1e-9)) {
  c.validate();
  Real worst = std::numeric_limits<Real>::infinity();
  Real scale = 0;
  std::size_t at = 0;
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    const Real slack = c.f[k] * c.d2f[k] - c.df[k] * c.df[k];
    scale = std::max(scale, std::abs(c.f[k] * c.d2f[k]) + c.df[k] * c.df[k]);
    if (slack < worst) {
      worst = slack;
      at = k;
    }
  }
  const Real thr = tol * std::max(Real(1), scale);
  return {VerdictKind::differential_logconvex,
          worst >= -thr ? Status::holds : Status::violated,
          worst,
          thr,
          {c.t[at]}};
}

template <typename Real>
ConvexityVerdict<Real> check_differential_logconvexity(const HeightSeries<Real> &s,
                                                       Real tol = Real(1e-9)) {
  return check_differential_logconvexity(s.curve(), tol);
}

/// log f(s) <= linear interpolation of log f between r and t, for grid
/// triples r < s < t. Every triple is checked for up to 60 samples; beyond
/// that all consecutive triples plus `random_triples` seeded ones.
/// Non-positive samples violate outright.
template <typename Real>
ConvexityVerdict<Real> check_discrete_logconvexity(const SampledCurve<Real> &c,
                                                   Real tol = Real(1e-9),
                                                   std::uint64_t seed = kDefaultSeed,
                                                   int random_triples = 10000) {
  c.validate();
  const std::size_t n = c.t.size();
  std::vector<Real> logf(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(c.f[k] > 0))
      return {VerdictKind::discrete_logconvex, Status::violated,
              -std::numeric_limits<Real>::infinity(), tol, {c.t[k]}};
    logf[k] = std::log(c.f[k]);
  }

  Real worst = std::numeric_limits<Real>::infinity();
  std::array<std::size_t, 3> at{0, 1, 2};
  auto visit = [&](std::size_t r, std::size_t s, std::size_t q) {
    const Real slack = detail::interpolation_slack(c.t, logf, r, s, q);
    if (slack < worst) {
      worst = slack;
      at = {r, s, q};
    }
  };

  constexpr std::size_t kExhaustiveLimit = 60;
  if (n <= kExhaustiveLimit) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = r + 1; s < n; ++s)
        for (std::size_t q = s + 1; q < n; ++q)
          visit(r, s, q);
  } else {
    for (std::size_t s = 1; s + 1 < n; ++s)
      visit(s - 1, s, s + 1);
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < random_triples; ++i) {
      std::array<std::size_t, 3> idx{pick(rng), pick(rng), pick(rng)};
      std::sort(idx.begin(), idx.end());
      if (idx[0] == idx[1] || idx[1] == idx[2])
        continue;
      visit(idx[0], idx[1], idx[2]);
    }
  }
  return {VerdictKind::discrete_logconvex,
          worst >= -tol ? Status::holds : Status::violated,
          worst,
          tol,
          {c.t[at[0]], c.t[at[1]], c.t[at[2]]}};
}

template <typename Real>
ConvexityVerdict<Real> check_discrete_logconvexity(const HeightSeries<Real> &s,
                                                   Real tol = Real(1e-9),
                                                   std::uint64_t seed = kDefaultSeed,
                                                   int random_triples = 10000) {
  return check_discrete_logconvexity(s.curve(), tol, seed, random_triples);
}

/// Strict decrease (f' < 0 and f_{k+1} < f_k; margin is the smallest of -f'
/// and the backward slopes) and slope monotonicity S(r,s) < S(s,t) on
/// consecutive triples (margin is the smallest increment of S).
template <typename Real>
std::pair<ConvexityVerdict<Real>, ConvexityVerdict<Real>>
check_monotonicity(const SampledCurve<Real> &c, Real tol = Real(1e-12)) {
  c.validate();
  const std::size_t n = c.t.size();

  Real dec = std::numeric_limits<Real>::infinity();
  Real dec_at = c.t[0];
  for (std::size_t k = 0; k < n; ++k) {
    if (-c.df[k] < dec) {
      dec = -c.df[k];
      dec_at = c.t[k];
    }
    if (k + 1 < n) {
      const Real drop = (c.f[k] - c.f[k + 1]) / (c.t[k + 1] - c.t[k]);
      if (drop < dec) {
        dec = drop;
        dec_at = c.t[k + 1];
      }
    }
  }

  auto slope = [&](std::size_t i, std::size_t j) {
    return (c.f[j] - c.f[i]) / (c.t[j] - c.t[i]);
  };
  Real mono = std::numeric_limits<Real>::infinity();
  std::size_t mono_at = 1;
  for (std::size_t s = 1; s + 1 < n; ++s) {
    const Real inc = slope(s, s + 1) - slope(s - 1, s);
    if (inc < mono) {
      mono = inc;
      mono_at = s;
    }
  }
  return {
      {VerdictKind::strict_decrease, dec >= -tol ? Status::holds : Status::violated, dec, tol,
       {dec_at}},
      {VerdictKind::slope_monotone, mono >= -tol ? Status::holds : Status::violated, mono, tol,
       {c.t[mono_at - 1], c.t[mono_at], c.t[mono_at + 1]}}};
}

template <typename Real>
std::pair<ConvexityVerdict<Real>, ConvexityVerdict<Real>>
check_monotonicity(const HeightSeries<Real> &s, Real tol = Real(1e-12)) {
  return check_monotonicity(s.curve(), tol);
}

/// h'(0) for the normalized u0: the closed form -Re<Au0, u0> and an
/// extrapolated one-sided difference of h.
template <typename Real>
DerivativeAtZero<Real> h_prime_at_zero(const MatrixC<Real> &a, const VectorC<Real> &u0) {
  detail::require_initial(a, u0, "h_prime_at_zero");
  const VectorC<Real> unit = u0 / u0.norm();
  const Real analytic = -re_inner<Real>(a * unit, unit);
  const Real numeric = one_sided_derivative<Real>(
      [&](Real d) { return evolve<Real>(a, unit, d).norm(); }, Real(1));
  return {analytic, numeric};
}

/// E(t) = ||e^{-tA}|| on the grid, E'(0) by extrapolation, and the spectral
/// abscissa min Re sigma(A).
template <typename Real>
NormSeries<Real> operator_norm_series(const MatrixC<Real> &a, const TimeGrid<Real> &grid) {
  require_operator(a, "operator_norm_series");
  auto norm_at = [&](Real t) {
    const MatrixC<Real> step = -t * a;
    return operator_norm<Real>(matrix_exp<Real>(step));
  };
  NormSeries<Real> out{grid, {}, 0, 0, 0};
  out.E.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    out.E.push_back(grid[k] == 0 ? Real(1) : norm_at(grid[k]));
  out.E_prime_zero_estimate = one_sided_derivative<Real>(norm_at, Real(1));
  const auto eig = general_eigenvalues<Real>(a);
  Real abscissa = std::numeric_limits<Real>::infinity();
  for (const auto &z : eig)
    abscissa = std::min(abscissa, std::real(z));
  out.spectral_abscissa = abscissa;
  out.long_time_rate = std::log(out.E.back()) / grid.back();
  return out;
}

} // namespace logdecay
