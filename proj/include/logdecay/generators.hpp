#pragma once

#include "logdecay/core.hpp"
#include "logdecay/semigroup.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace logdecay::examples {

/// Parameters of the Showalter-type counter-example A = X + iY with
/// Y = delta X + lambda1 U. Valid for 0 < lambda1 < lambda2,
/// 0 < delta <= 1 - sqrt(lambda1 / lambda2), dim >= 2.
struct ShowexParams {
  double lambda1 = 1.0;
  double lambda2 = 4.0;
  double delta = 0.5;
  int dim = 2;

  void validate() const;
};

/// Interval (alpha, beta) with n interior grid points.
struct AdrParams {
  double alpha = 0.0;
  double beta = 1.0;
  int n = 64;

  void validate() const;
};

enum class RandomKind { normal_accretive, strictly_accretive, sectorial_quarter, unrestricted };

std::string_view to_string(RandomKind kind);
RandomKind parse_random_kind(std::string_view name);

/// X = diag(lambda1, lambda2, 1, ..., 1), U swaps e1 and e2.
ComplexMatrix showex_general(const ShowexParams &p);

/// [[lambda, 0], [0, 4 lambda]] + i lambda [[delta, 1], [1, 4 delta]].
ComplexMatrix showex_matrix2(double lambda, double delta);

/// Raw finite-difference stencil of -u'' + u' on unknowns x_1..x_{n+1}:
/// Dirichlet at alpha eliminated, Neumann at beta by the ghost value
/// u_{n+2} = u_n. Real and nonsymmetric.
ComplexMatrix advection_diffusion_nodal(const AdrParams &p);

/// The same operator in an orthonormal basis of the discrete L2 space with
/// trapezoidal weights (the boundary node at beta carries weight 1/2):
/// W^{1/2} * nodal * W^{-1/2}. This is the matrix whose numerical range
/// reflects the coercivity of the continuous form.
ComplexMatrix advection_diffusion(const AdrParams &p);

/// diag(-1, 3).
ComplexMatrix contrast_matrix();

/// Seeded member of a random family; see the kind contracts in the README.
ComplexMatrix random_family(RandomKind kind, int n, std::uint64_t seed);

struct NamedCurve {
  std::string name;
  SampledCurve<double> curve;
};

/// Samples f, f', f'' on n uniform points of [lo, hi].
SampledCurve<double> sample(const std::function<double(double)> &f,
                            const std::function<double(double)> &df,
                            const std::function<double(double)> &d2f, double lo, double hi,
                            int n);

/// Stretch of f at a < b: f(t) for t < a, f(a) on [a, b), f(t - (b - a))
/// for t >= b, with matching piecewise derivatives.
SampledCurve<double> stretch(const std::function<double(double)> &f,
                             const std::function<double(double)> &df,
                             const std::function<double(double)> &d2f, double a, double b,
                             double lo, double hi, int n);

/// exp(-t), its stretch with a = 1, b = 2, t^4 (all on [0, 4], 400 points)
/// and exp(t) - 1 on [0.5, 2].
std::vector<NamedCurve> scalar_fixtures();

} // namespace logdecay::examples
