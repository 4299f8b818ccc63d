#include "logdecay/generators.hpp"

#include "logdecay/linalg.hpp"
#include "logdecay/random.hpp"

#include <cmath>
#include <random>
#include <string>

namespace logdecay::examples {

void ShowexParams::validate() const {
  if (!(lambda1 > 0) || !(lambda2 > lambda1))
    throw DomainError("ShowexParams: need 0 < lambda1 < lambda2");
  const double delta_max = 1.0 - std::sqrt(lambda1 / lambda2);
  if (!(delta > 0) || delta > delta_max)
    throw DomainError("ShowexParams: delta must lie in (0, " + std::to_string(delta_max) + "]");
  if (dim < 2)
    throw DomainError("ShowexParams: dim must be >= 2");
}

void AdrParams::validate() const {
  if (!(beta > alpha) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("AdrParams: need finite alpha < beta");
  if (n < 2)
    throw DomainError("AdrParams: n must be >= 2");
}

std::string_view to_string(RandomKind kind) {
  switch (kind) {
  case RandomKind::normal_accretive: return "normal-accretive";
  case RandomKind::strictly_accretive: return "strictly-accretive";
  case RandomKind::sectorial_quarter: return "sectorial-quarter";
  case RandomKind::unrestricted: return "unrestricted";
  }
  return "unknown";
}

RandomKind parse_random_kind(std::string_view name) {
  for (auto k : {RandomKind::normal_accretive, RandomKind::strictly_accretive,
                 RandomKind::sectorial_quarter, RandomKind::unrestricted})
    if (to_string(k) == name)
      return k;
  throw DomainError("unknown random family '" + std::string(name) + "'");
}

ComplexMatrix showex_general(const ShowexParams &p) {
  p.validate();
  const Eigen::Index n = p.dim;
  ComplexMatrix x = ComplexMatrix::Identity(n, n);
  x(0, 0) = p.lambda1;
  x(1, 1) = p.lambda2;
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  u(0, 1) = 1.0;
  u(1, 0) = 1.0;
  const ComplexMatrix y = p.delta * x + p.lambda1 * u;
  return x + Complex<double>(0, 1) * y;
}

ComplexMatrix showex_matrix2(double lambda, double delta) {
  if (!(lambda > 0))
    throw DomainError("showex_matrix2: lambda must be > 0");
  if (!(delta > 0) || delta > 0.5)
    throw DomainError("showex_matrix2: delta must lie in (0, 1/2]");
  const Complex<double> i(0, 1);
  ComplexMatrix a(2, 2);
  a << lambda + i * lambda * delta, i * lambda, i * lambda, 4 * lambda + i * 4.0 * lambda * delta;
  return a;
}

ComplexMatrix advection_diffusion_nodal(const AdrParams &p) {
  p.validate();
  const Eigen::Index size = p.n + 1;
  const double h = (p.beta - p.alpha) / (p.n + 1);
  const double diff = 1.0 / (h * h);
  const double adv = 1.0 / (2 * h);
  ComplexMatrix a = ComplexMatrix::Zero(size, size);
  for (Eigen::Index row = 0; row < p.n; ++row) {
    a(row, row) = 2 * diff;
    if (row > 0)
      a(row, row - 1) = -diff - adv;
    a(row, row + 1) = -diff + adv;
  }
  // ghost value u_{n+2} = u_n: the advection term cancels, diffusion doubles
  a(p.n, p.n) = 2 * diff;
  a(p.n, p.n - 1) = -2 * diff;
  return a;
}

ComplexMatrix advection_diffusion(const AdrParams &p) {
  ComplexMatrix a = advection_diffusion_nodal(p);
  const double w = std::sqrt(0.5);
  const Eigen::Index last = p.n;
  a.row(last) *= w;
  a.col(last) /= w;
  return a;
}

ComplexMatrix contrast_matrix() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = -1.0;
  a(1, 1) = 3.0;
  return a;
}

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, Rng &rng) {
  const ComplexMatrix g = complex_gaussian_matrix<double>(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_positive_definite(Eigen::Index n, Rng &rng) {
  const ComplexMatrix b = complex_gaussian_matrix<double>(n, n, rng);
  return b * b.adjoint() / double(n) + 0.1 * ComplexMatrix::Identity(n, n);
}

} // namespace

ComplexMatrix random_family(RandomKind kind, int n, std::uint64_t seed) {
  if (n < 1)
    throw DomainError("random_family: n must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index dim = n;

  switch (kind) {
  case RandomKind::normal_accretive: {
    const ComplexMatrix g = complex_gaussian_matrix<double>(dim, dim, rng);
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
    ComplexVector d(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double re = 0.1 + 1.9 * unit(rng);
      const double im = normal(rng);
      d(k) = Complex<double>(re, im);
    }
    return q * d.asDiagonal() * q.adjoint();
  }
  case RandomKind::strictly_accretive: {
    const ComplexMatrix x = random_positive_definite(dim, rng);
    const ComplexMatrix y0 = random_hermitian(dim, rng);
    // ||Y|| = s * lambda_min(X); s <= 1 guarantees an accretive square
    const double s = 1.5 * unit(rng);
    const double lmin = hermitian_eigen<double>(x).values(0);
    const double ynorm = operator_norm<double>(y0);
    const ComplexMatrix y = ynorm > 0 ? ComplexMatrix(y0 * (s * lmin / ynorm)) : y0;
    return x + Complex<double>(0, 1) * y;
  }
  case RandomKind::sectorial_quarter: {
    const ComplexMatrix x = random_positive_definite(dim, rng);
    const ComplexMatrix y0 = random_hermitian(dim, rng);
    const auto es = hermitian_eigen<double>(x);
    RealVector inv_sqrt(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
      inv_sqrt(k) = 1.0 / std::sqrt(es.values(k));
    const ComplexMatrix w =
        es.vectors * inv_sqrt.cast<Complex<double>>().asDiagonal() * es.vectors.adjoint();
    const ComplexMatrix whitened = w * y0 * w;
    const auto wes = hermitian_eigen<double>(whitened);
    const double rho = std::max(std::abs(wes.values(0)), std::abs(wes.values(dim - 1)));
    // -X <= Y <= X iff the whitened Y has spectral radius <= 1
    const double c = 0.1 + 0.85 * unit(rng);
    const ComplexMatrix y = rho > 0 ? ComplexMatrix(y0 * (c / rho)) : y0;
    return x + Complex<double>(0, 1) * y;
  }
  case RandomKind::unrestricted:
    return complex_gaussian_matrix<double>(dim, dim, rng);
  }
  throw DomainError("random_family: unknown kind");
}

SampledCurve<double> sample(const std::function<double(double)> &f,
                            const std::function<double(double)> &df,
                            const std::function<double(double)> &d2f, double lo, double hi,
                            int n) {
  if (n < 3 || !(hi > lo))
    throw DomainError("sample: need n >= 3 and lo < hi");
  SampledCurve<double> c;
  for (int k = 0; k < n; ++k) {
    const double t = lo + (hi - lo) * double(k) / double(n - 1);
    c.t.push_back(t);
    c.f.push_back(f(t));
    c.df.push_back(df(t));
    c.d2f.push_back(d2f(t));
  }
  return c;
}

SampledCurve<double> stretch(const std::function<double(double)> &f,
                             const std::function<double(double)> &df,
                             const std::function<double(double)> &d2f, double a, double b,
                             double lo, double hi, int n) {
  if (!(b > a))
    throw DomainError("stretch: need a < b");
  const double shift = b - a;
  const double fa = f(a);
  auto piece = [=](const std::function<double(double)> &g, double flat) {
    return [=](double t) { return t < a ? g(t) : (t < b ? flat : g(t - shift)); };
  };
  return sample(piece(f, fa), piece(df, 0.0), piece(d2f, 0.0), lo, hi, n);
}

std::vector<NamedCurve> scalar_fixtures() {
  constexpr int kPoints = 400;
  auto decay = [](double t) { return std::exp(-t); };
  auto decay_d = [](double t) { return -std::exp(-t); };
  std::vector<NamedCurve> out;
  out.push_back({"exp_decay", sample(decay, decay_d, decay, 0.0, 4.0, kPoints)});
  out.push_back({"stretched_exp_decay", stretch(decay, decay_d, decay, 1.0, 2.0, 0.0, 4.0, kPoints)});
  out.push_back({"exp_minus_one",
                 sample([](double t) { return std::expm1(t); }, [](double t) { return std::exp(t); },
                        [](double t) { return std::exp(t); }, 0.5, 2.0, kPoints)});
  out.push_back({"quartic",
                 sample([](double t) { return t * t * t * t; }, [](double t) { return 4 * t * t * t; },
                        [](double t) { return 12 * t * t; }, 0.0, 4.0, kPoints)});
  return out;
}

} // namespace logdecay::examples
