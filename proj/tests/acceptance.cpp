// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "logdecay/generators.hpp"
#include "logdecay/operator_props.hpp"
#include "logdecay/semigroup.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace logdecay;

namespace {

using C = Complex<double>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  /// Records a sub-claim; the first failing one is named in the detail line.
  void require(bool ok, const std::string &what) {
    if (!ok && pass) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

ComplexVector basis(int n, int k) {
  ComplexVector v = ComplexVector::Zero(n);
  v(k) = 1;
  return v;
}

ComplexMatrix random_normal(int n, Rng &rng) {
  const ComplexMatrix g = complex_gaussian_matrix<double>(n, n, rng);
  const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
  const ComplexVector d = complex_gaussian<double>(n, rng) * 2.0;
  return q * d.asDiagonal() * q.adjoint();
}

double differential_at(const HeightSeries<double> &s, std::size_t k) {
  return s.h[k] * s.h_second[k] - s.h_prime[k] * s.h_prime[k];
}

// 1 -------------------------------------------------------------------------
void accretive_square_violation(Outcome &o) {
  const ComplexMatrix a = examples::showex_matrix2(1.0, 0.5);
  const auto r = check_accretive_square(a);
  const ComplexMatrix sq = a * a;
  const ComplexVector e1 = basis(2, 0);
  const double at_e1 = re_inner<double>(sq * e1, e1);
  o.require(r.status == Status::violated, "accretive-square violated");
  o.require(r.extremal_value <= -0.25 + 1e-8, "m(A^2) <= -0.25 + 1e-8");
  o.require(std::abs(at_e1 + 0.25) <= 1e-10, "Re<A^2 e1, e1> = -0.25");
  o.detail << "m(A^2)=" << r.extremal_value << " Re<A^2e1,e1>=" << at_e1;
}

// 2 -------------------------------------------------------------------------
void showalter_verdict_pattern(Outcome &o) {
  Rng rng(kDefaultSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_m_err = 0, worst_comm_slack = -1e300, worst_g = -1e300;
  for (int k = 0; k < 20; ++k) {
    // log-uniform lambda over [0.1, 10]; delta over (0, 0.5] with the endpoint included
    const double lambda = 0.1 * std::pow(100.0, k == 0 ? 0.0 : (k == 1 ? 1.0 : unit(rng)));
    const double delta = k % 5 == 0 ? 0.5 : 0.5 * (1.0 - unit(rng));
    // dim 3 realizes the complement where X = I, so m(A) = min(1, lambda)
    const ComplexMatrix a = examples::showex_general({lambda, 4 * lambda, delta, 3});
    const auto acc = check_accretivity(a);
    const auto sector = check_semiangle(a);
    const auto hypo = check_hyponormal(a);
    const auto crit = check_logconvex_criterion(a);
    const double m_err = std::abs(acc.positively_accretive.extremal_value - std::min(1.0, lambda));
    worst_m_err = std::max(worst_m_err, m_err);
    const double comm_bound = -2 * lambda * (4 * lambda - lambda) + 1e-6;
    worst_comm_slack = std::max(worst_comm_slack, hypo.extremal_value - comm_bound);
    const std::string tag = " (lambda=" + std::to_string(lambda) + ", delta=" + std::to_string(delta) + ")";
    o.require(acc.positively_accretive.holds(), "positively accretive" + tag);
    o.require(m_err <= 1e-8, "m = min(1, lambda)" + tag);
    o.require(sector.holds(), "semiangle" + tag);
    o.require(hypo.status == Status::violated && hypo.extremal_value <= comm_bound,
              "commutator bound" + tag);
    o.require(crit.status == Status::violated && crit.witness.has_value(), "criterion violated" + tag);
    if (crit.witness) {
      const double g = criterion_value(a, *crit.witness);
      worst_g = std::max(worst_g, g);
      o.require(g < -1e-8, "witness g < -1e-8" + tag);
    }
  }
  o.detail << "20 pairs: max|m-min(1,l)|=" << worst_m_err
           << " max(lmin([A*,A]) - bound)=" << worst_comm_slack << " max witness g=" << worst_g;
}

// 3 -------------------------------------------------------------------------
void short_time_contrast(Outcome &o) {
  const ComplexMatrix a = examples::contrast_matrix();
  const auto d = h_prime_at_zero<double>(a, basis(2, 1));
  const auto ns = operator_norm_series<double>(a, TimeGrid<double>::uniform(1.0, 3));
  const double m = lower_bound_m(a);
  o.require(std::abs(d.analytic + 3) <= 1e-12, "h'(0) = -3");
  o.require(std::abs(ns.E_prime_zero_estimate - 1) <= 1e-4, "E'(0) = 1");
  o.require(std::abs(m + 1) <= 1e-12, "m = -1");
  o.detail << "h'(0)=" << d.analytic << " E'(0)~" << ns.E_prime_zero_estimate << " m=" << m;
}

// 4 -------------------------------------------------------------------------
void forward_direction(Outcome &o) {
  double worst_disc = 1e300, worst_diff_ratio = -1e300;
  int series = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = std::array<int, 3>{2, 4, 8}[k % 3];
    const ComplexMatrix a =
        examples::random_family(examples::RandomKind::normal_accretive, n, 10'000 + k);
    const auto grid = TimeGrid<double>::for_operator(a);
    Rng rng(20'000 + k);
    for (int j = 0; j < 20; ++j) {
      const auto s = height_series<double>(a, random_unit_vector<double>(n, rng), grid);
      const auto disc = check_discrete_logconvexity(s, 1e-9);
      const auto diff = check_differential_logconvexity(s, 1e-9);
      worst_disc = std::min(worst_disc, disc.margin);
      worst_diff_ratio = std::max(worst_diff_ratio, -diff.margin / diff.threshold);
      o.require(disc.margin >= -1e-9, "discrete margin >= -1e-9");
      o.require(diff.margin >= -diff.threshold, "differential margin >= -1e-9 * scale");
      ++series;
    }
  }
  o.detail << series << " series: min discrete margin=" << worst_disc
           << " max(-differential margin / threshold)=" << worst_diff_ratio;
}

// 5 -------------------------------------------------------------------------
void converse_direction(Outcome &o) {
  const ComplexMatrix a = examples::showex_matrix2(1.0, 0.5);
  const auto crit = check_logconvex_criterion(a);
  o.require(crit.witness.has_value(), "criterion witness exists");
  if (!crit.witness)
    return;
  const ComplexVector &x0 = *crit.witness;
  const double g0 = criterion_value(a, x0);
  o.require(g0 < -1e-6, "certified witness g(x0) < -1e-6");
  const auto s = height_series<double>(a, x0, TimeGrid<double>::for_operator(a));
  double worst = 1e300, at = -1;
  for (std::size_t k = 0; k < s.grid.size() && s.grid[k] <= 1e-2; ++k) {
    const double v = differential_at(s, k);
    if (v < worst) {
      worst = v;
      at = s.grid[k];
    }
  }
  o.require(worst < -1e-8, "h h'' - h'^2 < -1e-8 for some t <= 1e-2");
  o.require((worst < 0) == (g0 < 0), "sign matches g(u0)");
  o.detail << "g(u0)=" << g0 << " min(h h''-h'^2) on t<=1e-2 = " << worst << " at t=" << at;
}

// 6 -------------------------------------------------------------------------
void accretive_square_implies_semiangle(Outcome &o) {
  const std::array<examples::RandomKind, 4> kinds{
      examples::RandomKind::strictly_accretive, examples::RandomKind::sectorial_quarter,
      examples::RandomKind::normal_accretive, examples::RandomKind::unrestricted};
  int kept = 0;
  double worst = 1e300;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 5;
    const ComplexMatrix a = examples::random_family(kinds[k % 4], n, 30'000 + k);
    if (lower_bound_m(a) < 0 || check_accretive_square(a).extremal_value < 0)
      continue;
    ++kept;
    const auto r = check_semiangle(a);
    const double scaled = r.extremal_value / a.norm();
    worst = std::min(worst, scaled);
    o.require(r.holds() && r.extremal_value >= -1e-8 * a.norm(), "semiangle after filter");
  }
  o.require(kept > 0, "some matrices pass the filter");
  o.detail << kept << "/200 kept; min lambda_min(X+-Y)/||A||=" << worst;
}

// 7 -------------------------------------------------------------------------
void accretive_square_strict_convexity(Outcome &o) {
  int kept = 0, drawn = 0;
  double min_h2 = 1e300, min_dec = 1e300, min_mono = 1e300;
  for (std::uint64_t seed = 40'000; kept < 50 && drawn < 1000; ++seed, ++drawn) {
    const int n = 2 + int(seed % 5);
    const ComplexMatrix a = examples::random_family(examples::RandomKind::strictly_accretive, n, seed);
    if (check_accretive_square(a).extremal_value < 0)
      continue;
    ++kept;
    const auto grid = TimeGrid<double>::for_operator(a);
    Rng rng(seed + 1'000'000);
    for (int j = 0; j < 10; ++j) {
      const auto s = height_series<double>(a, random_unit_vector<double>(n, rng), grid);
      for (double v : s.h_second)
        min_h2 = std::min(min_h2, v);
      const auto [dec, mono] = check_monotonicity(s);
      min_dec = std::min(min_dec, dec.margin);
      min_mono = std::min(min_mono, mono.margin);
      o.require(dec.holds() && dec.margin > 0, "strict decrease");
      o.require(mono.holds() && mono.margin > 0, "slope monotone");
    }
  }
  o.require(kept == 50, "50 matrices pass the filter");
  o.require(min_h2 > 0, "h'' > 0");
  o.detail << kept << " kept of " << drawn << " drawn; min h''=" << min_h2
           << " min decrease margin=" << min_dec << " min slope increment=" << min_mono;
}

// 8 -------------------------------------------------------------------------
void hyponormal_implies_criterion(Outcome &o) {
  Rng rng(50'000);
  double worst = 1e300;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 5;
    const ComplexMatrix a =
        k % 2 ? random_normal(n, rng)
              : examples::random_family(examples::RandomKind::normal_accretive, n, 60'000 + k);
    const auto w = brute_force_criterion_min(a, 10'000, 70'000 + k);
    worst = std::min(worst, w.value);
    o.require(w.value >= -1e-9, "brute-force min >= -1e-9");
  }
  o.detail << "100 normal matrices: min g=" << worst;
}

// 9 -------------------------------------------------------------------------
void scalar_fixture_discrimination(Outcome &o) {
  const auto all = examples::scalar_fixtures();
  auto get = [&](const std::string &name) -> const SampledCurve<double> & {
    for (const auto &c : all)
      if (c.name == name)
        return c.curve;
    throw std::runtime_error("missing fixture " + name);
  };
  const auto &decay = get("exp_decay");
  const auto dd = check_differential_logconvexity(decay);
  const auto dc = check_discrete_logconvexity(decay);
  o.require(std::abs(dd.margin) <= 1e-10 && std::abs(dc.margin) <= 1e-10,
            "exp(-t) equality margins");

  const auto &stretched = get("stretched_exp_decay");
  const auto sc = check_discrete_logconvexity(stretched);
  const auto sm = check_monotonicity(stretched).second;
  o.require(sc.holds(), "stretch passes discrete log-convexity");
  o.require(sm.status == Status::violated, "stretch fails slope monotonicity");

  const auto ec = check_discrete_logconvexity(get("exp_minus_one"));
  o.require(ec.status == Status::violated, "exp(t)-1 fails discrete log-convexity");

  o.detail << "exp(-t) margins " << dd.margin << ", " << dc.margin << "; stretch discrete margin "
           << sc.margin << " at (" << sc.witness[0] << ", " << sc.witness[1] << ", "
           << sc.witness[2] << "), slope increment " << sm.margin << "; exp(t)-1 margin "
           << ec.margin;
}

// 10 ------------------------------------------------------------------------
void numerical_substrate(Outcome &o) {
  Rng rng(80'000);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  double worst_law = 0, worst_normal = 0, worst_grad = 0;
  for (int k = 0; k < 32; ++k) {
    const int n = 1 + k % 16;
    const ComplexMatrix a = complex_gaussian_matrix<double>(n, n, rng);
    const double s = unif(rng), t = unif(rng);
    const ComplexMatrix full = matrix_exp<double>(ComplexMatrix(-(s + t) * a));
    const ComplexMatrix split =
        matrix_exp<double>(ComplexMatrix(-s * a)) * matrix_exp<double>(ComplexMatrix(-t * a));
    worst_law = std::max(worst_law, (full - split).norm() / full.norm());
  }
  for (int n : {2, 4, 8, 16, 32, 64}) {
    const ComplexMatrix g = complex_gaussian_matrix<double>(n, n, rng);
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
    const ComplexVector d = complex_gaussian<double>(n, rng) * 5.0;
    ComplexVector ed(n);
    for (int k = 0; k < n; ++k)
      ed(k) = std::exp(d(k));
    const ComplexMatrix a = q * d.asDiagonal() * q.adjoint();
    const ComplexMatrix want = q * ed.asDiagonal() * q.adjoint();
    worst_normal = std::max(worst_normal, (matrix_exp<double>(a) - want).norm() / want.norm());
  }
  const double h = 1e-6;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 7;
    const ComplexMatrix a = complex_gaussian_matrix<double>(n, n, rng);
    const CriterionForm<double> form(a);
    const ComplexVector x = random_unit_vector<double>(n, rng);
    const ComplexVector grad = form.gradient(x);
    ComplexVector fd(n);
    for (int j = 0; j < n; ++j) {
      ComplexVector e = ComplexVector::Zero(n);
      e(j) = 1;
      const double re = (form.value(x + h * e) - form.value(x - h * e)) / (2 * h);
      e(j) = C(0, 1);
      const double im = (form.value(x + h * e) - form.value(x - h * e)) / (2 * h);
      fd(j) = C(re, im);
    }
    worst_grad = std::max(worst_grad, (fd - grad).norm() / grad.norm());
  }
  o.require(worst_law <= 1e-10, "semigroup law");
  o.require(worst_normal <= 1e-10, "normal exp vs eigendecomposition");
  o.require(worst_grad <= 1e-5, "gradient vs central differences");
  o.detail << "semigroup law rel=" << worst_law << " normal exp rel=" << worst_normal
           << " gradient rel=" << worst_grad;
}

// 11 ------------------------------------------------------------------------
void advection_diffusion_dynamics(Outcome &o) {
  const examples::AdrParams p{0.0, 1.0, 64};
  const ComplexMatrix a = examples::advection_diffusion(p);
  const double m = lower_bound_m(a);
  const auto hypo = check_hyponormal(a);
  // sin profile of the mixed Dirichlet/Neumann problem, in the weighted basis
  const int size = p.n + 1;
  const double dx = (p.beta - p.alpha) / (p.n + 1);
  ComplexVector u0(size);
  for (int k = 0; k < size; ++k) {
    const double x = p.alpha + (k + 1) * dx;
    const double weight = k == size - 1 ? 0.5 : 1.0;
    u0(k) = std::sqrt(weight) * std::sin(std::numbers::pi * (x - p.alpha) / (2 * (p.beta - p.alpha)));
  }
  u0 /= u0.norm();
  const auto s = height_series<double>(a, u0, TimeGrid<double>::for_operator(a));
  const auto dec = check_monotonicity(s).first;
  double min_h = 1e300;
  for (double v : s.h)
    min_h = std::min(min_h, v);
  o.require(m > 0, "m(A_h) > 0");
  o.require(hypo.status == Status::violated, "hyponormality violated");
  o.require(dec.holds() && dec.margin > 0, "strictly decreasing");
  o.require(min_h > 0, "h > 0");
  o.detail << "m(A_h)=" << m << " lambda_min([A*,A])=" << hypo.extremal_value
           << " decrease margin=" << dec.margin << " min h=" << min_h;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
      {"Showalter accretive-square violation", accretive_square_violation},
      {"Showalter verdict pattern", showalter_verdict_pattern},
      {"short-time contrast", short_time_contrast},
      {"criterion implies log-convex decay", forward_direction},
      {"criterion witness breaks log-convexity", converse_direction},
      {"accretive square implies semiangle", accretive_square_implies_semiangle},
      {"accretive square gives strictly convex decay", accretive_square_strict_convexity},
      {"hyponormal implies criterion", hyponormal_implies_criterion},
      {"scalar fixture discrimination", scalar_fixture_discrimination},
      {"numerical substrate", numerical_substrate},
      {"advection-diffusion discretization", advection_diffusion_dynamics},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.str().c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
