#include "logdecay/pipeline.hpp"

#include "logdecay/semigroup.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace logdecay::pipeline {

namespace {

using io::Json;

Json witness_json(const std::optional<ComplexVector> &w) {
  if (!w)
    return nullptr;
  return io::vector_to_json(*w)["entries"];
}

Json property_json(const PropertyReport<double> &r) {
  Json j;
  j["property"] = std::string(to_string(r.property));
  j["status"] = std::string(to_string(r.status));
  j["extremal_value"] = r.extremal_value;
  j["tolerance"] = r.tolerance;
  j["method"] = r.method;
  j["witness"] = witness_json(r.witness);
  return j;
}

Json verdict_json(const ConvexityVerdict<double> &v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["status"] = std::string(to_string(v.status));
  j["margin"] = v.margin;
  j["threshold"] = v.threshold;
  j["witness_times"] = v.witness;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Json config_json(const RunConfig &cfg, const std::optional<TimeGrid<double>> &grid) {
  Json c;
  c["command"] = cfg.command;
  c["seed"] = cfg.seed;
  c["tolerances"] = {{"absolute", cfg.tolerances.absolute}, {"relative", cfg.tolerances.relative}};
  c["logconvex_tol"] = cfg.logconvex_tol;
  c["criterion"] = {{"seed", cfg.criterion.seed},
                    {"samples", cfg.criterion.samples},
                    {"starts", cfg.criterion.starts},
                    {"max_iterations", cfg.criterion.max_iterations},
                    {"gradient_tol", cfg.criterion.gradient_tol},
                    {"tol", cfg.criterion.tol}};
  Json g;
  g["t_max"] = grid ? Json(grid->back()) : Json(cfg.grid.t_max ? Json(*cfg.grid.t_max) : Json());
  g["n_points"] = cfg.grid.n_points;
  g["clustering"] = cfg.grid.clustering;
  c["grid"] = std::move(g);
  c["angles"] = cfg.angles;
  c["u0"] = cfg.u0;
  return c;
}

Json base_report(const MatrixSource &input, const RunConfig &cfg,
                 const std::optional<TimeGrid<double>> &grid = std::nullopt) {
  Json r;
  r["tool"] = "logdecay";
  r["version"] = kToolVersion;
  r["command"] = cfg.command;
  Json in;
  in["source"] = input.kind;
  in["name"] = input.name;
  in["params"] = input.params;
  in["n"] = input.matrix.rows();
  in["matrix_hash"] = io::matrix_hash(input.matrix);
  r["input"] = std::move(in);
  r["config"] = config_json(cfg, grid);
  r["properties"] = Json::array();
  r["verdicts"] = Json::array();
  r["summary"] = Json::object();
  if (cfg.timestamp)
    r["timestamp"] = utc_timestamp();
  return r;
}

double e_prime_zero(const ComplexMatrix &a) {
  return one_sided_derivative<double>(
      [&](double d) {
        const ComplexMatrix step = -d * a;
        return operator_norm<double>(matrix_exp<double>(step));
      },
      1.0);
}

double spectral_abscissa(const ComplexMatrix &a) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto &z : general_eigenvalues<double>(a))
    out = std::min(out, z.real());
  return out;
}

CriterionConfig criterion_config(const RunConfig &cfg) {
  CriterionConfig c = cfg.criterion;
  c.seed = cfg.seed;
  c.tol = cfg.tolerances.relative;
  return c;
}

} // namespace

MatrixSource make_example(const ExampleArgs &args) {
  MatrixSource src;
  src.kind = "example";
  src.name = args.name;
  const std::string &name = args.name;
  if (name == "showex2") {
    src.params = {{"lambda", args.lambda}, {"delta", args.delta}};
    src.matrix = examples::showex_matrix2(args.lambda, args.delta);
  } else if (name == "showex") {
    src.params = {{"lambda1", args.lambda1},
                  {"lambda2", args.lambda2},
                  {"delta", args.delta},
                  {"dim", args.dim}};
    src.matrix = examples::showex_general({args.lambda1, args.lambda2, args.delta, args.dim});
  } else if (name == "adr") {
    src.params = {{"alpha", args.alpha}, {"beta", args.beta}, {"n", args.n}};
    src.matrix = examples::advection_diffusion({args.alpha, args.beta, args.n});
  } else if (name == "contrast") {
    src.matrix = examples::contrast_matrix();
  } else if (name == "identity") {
    if (args.dim < 1)
      throw DomainError("identity: dim must be >= 1");
    src.params = {{"dim", args.dim}};
    src.matrix = ComplexMatrix::Identity(args.dim, args.dim);
  } else if (name == "nilpotent") {
    src.matrix = ComplexMatrix::Zero(2, 2);
    src.matrix(0, 1) = 1.0;
  } else if (name == "random") {
    const auto kind = examples::parse_random_kind(args.kind);
    src.params = {{"kind", args.kind}, {"n", args.n}, {"seed", args.seed}};
    src.matrix = examples::random_family(kind, args.n, args.seed);
  } else {
    throw DomainError("unknown example '" + name + "'");
  }
  return src;
}

MatrixSource load_matrix(const std::string &path) {
  MatrixSource src;
  src.kind = "file";
  src.name = std::filesystem::path(path).filename().string();
  src.matrix = io::read_matrix_file(path);
  return src;
}

TimeGrid<double> build_grid(const ComplexMatrix &a, const GridSpec &spec) {
  double t_max;
  if (spec.t_max) {
    t_max = *spec.t_max;
  } else {
    t_max = 10.0 / std::max(lower_bound_m(a), 0.1);
  }
  if (spec.clustering == "hybrid")
    return TimeGrid<double>::hybrid(t_max, spec.n_points);
  if (spec.clustering == "uniform")
    return TimeGrid<double>::uniform(t_max, spec.n_points);
  throw DomainError("unknown grid clustering '" + spec.clustering + "'");
}

ComplexVector resolve_u0(const ComplexMatrix &a, const std::string &spec, const RunConfig &cfg) {
  const Eigen::Index n = a.rows();
  if (spec == "ones")
    return ComplexVector::Ones(n) / std::sqrt(double(n));
  if (spec == "random") {
    Rng rng(cfg.seed);
    return random_unit_vector<double>(n, rng);
  }
  if (spec == "witness")
    return minimize_criterion<double>(a, criterion_config(cfg)).witness.x;
  if (spec.size() >= 2 && spec[0] == 'e' &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const long k = std::stol(spec.substr(1));
    if (k < 1 || k > n)
      throw DomainError("u0 '" + spec + "' outside 1.." + std::to_string(n));
    ComplexVector e = ComplexVector::Zero(n);
    e(k - 1) = 1.0;
    return e;
  }
  ComplexVector v = io::read_vector_file(spec);
  if (v.size() != n)
    throw DomainError("u0 dimension " + std::to_string(v.size()) + " does not match n = " +
                      std::to_string(n));
  return v;
}

CommandOutput cmd_check(const MatrixSource &input, const RunConfig &cfg) {
  const ComplexMatrix &a = input.matrix;
  const double tol = cfg.tolerances.relative;
  CommandOutput out;
  out.report = base_report(input, cfg);

  const auto acc = check_accretivity<double>(a, tol);
  const auto hypo = check_hyponormal<double>(a, tol);
  const auto square = check_accretive_square<double>(a, tol);
  const auto sector = check_semiangle<double>(a, tol);
  const auto crit = check_logconvex_criterion<double>(a, criterion_config(cfg));
  for (const auto *r : {&acc.accretive, &acc.positively_accretive, &hypo, &square, &sector, &crit}) {
    out.report["properties"].push_back(property_json(*r));
    out.any_violation = out.any_violation || r->status == Status::violated;
  }
  Json &s = out.report["summary"];
  s["m"] = acc.accretive.extremal_value;
  s["m_A2"] = square.extremal_value;
  s["commutator_min"] = hypo.extremal_value;
  s["criterion_min"] = crit.extremal_value;
  s["semiangle_min"] = sector.extremal_value;
  s["E_prime_zero"] = e_prime_zero(a);
  s["spectral_abscissa"] = spectral_abscissa(a);
  return out;
}

CommandOutput cmd_evolve(const MatrixSource &input, const RunConfig &cfg) {
  const ComplexMatrix &a = input.matrix;
  const auto grid = build_grid(a, cfg.grid);
  const ComplexVector u0 = resolve_u0(a, cfg.u0, cfg);
  CommandOutput out;
  out.report = base_report(input, cfg, grid);

  const auto series = height_series<double>(a, u0, grid);
  const auto diff = check_differential_logconvexity<double>(series, cfg.logconvex_tol);
  const auto disc = check_discrete_logconvexity<double>(series, cfg.logconvex_tol, cfg.seed);
  const auto [decrease, slope] = check_monotonicity<double>(series, cfg.tolerances.absolute);
  for (const auto *v : {&diff, &disc, &decrease, &slope}) {
    out.report["verdicts"].push_back(verdict_json(*v));
    out.any_violation = out.any_violation || v->status == Status::violated;
  }
  const auto d0 = h_prime_at_zero<double>(a, u0);
  const double m = lower_bound_m(a);
  Json &s = out.report["summary"];
  s["m"] = m;
  s["minus_m"] = -m;
  s["h_prime_zero_analytic"] = d0.analytic;
  s["h_prime_zero_numeric"] = d0.numeric_limit;
  s["criterion_at_u0"] = criterion_value<double>(a, u0);
  s["u0"] = io::vector_to_json(u0)["entries"];
  out.csv = io::height_series_csv(series);
  return out;
}

CommandOutput cmd_range(const MatrixSource &input, const RunConfig &cfg) {
  const ComplexMatrix &a = input.matrix;
  const auto boundary = numerical_range_boundary<double>(a, cfg.angles);
  CommandOutput out;
  out.report = base_report(input, cfg);

  io::CsvWriter csv({"kind", "theta", "re", "im"});
  double im_lo = std::numeric_limits<double>::infinity();
  double im_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < boundary.angles.size(); ++k) {
    const auto z = boundary.boundary_points[k];
    im_lo = std::min(im_lo, z.imag());
    im_hi = std::max(im_hi, z.imag());
    csv.row({"boundary", io::format_double(boundary.angles[k]), io::format_double(z.real()),
             io::format_double(z.imag())});
  }
  // the vertical line Re z = m(A) across the sampled range
  csv.row({"m_line", "", io::format_double(boundary.m), io::format_double(im_lo)});
  csv.row({"m_line", "", io::format_double(boundary.m), io::format_double(im_hi)});
  out.csv = csv.str();

  Json &s = out.report["summary"];
  s["m"] = boundary.m;
  s["n_angles"] = cfg.angles;
  s["max_support"] = *std::max_element(boundary.support_values.begin(),
                                       boundary.support_values.end());
  return out;
}

CommandOutput cmd_norms(const MatrixSource &input, const RunConfig &cfg) {
  const ComplexMatrix &a = input.matrix;
  const auto grid = build_grid(a, cfg.grid);
  CommandOutput out;
  out.report = base_report(input, cfg, grid);

  const auto norms = operator_norm_series<double>(a, grid);
  std::optional<HeightSeries<double>> series;
  if (!cfg.u0.empty())
    series = height_series<double>(a, resolve_u0(a, cfg.u0, cfg), grid);

  io::CsvWriter csv(series ? std::vector<std::string>{"t", "E", "h"}
                           : std::vector<std::string>{"t", "E"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (series)
      csv.row(std::vector<double>{grid[k], norms.E[k], series->h[k]});
    else
      csv.row(std::vector<double>{grid[k], norms.E[k]});
  }
  out.csv = csv.str();

  const double m = lower_bound_m(a);
  Json &s = out.report["summary"];
  s["m"] = m;
  s["minus_m"] = -m;
  s["E_prime_zero"] = norms.E_prime_zero_estimate;
  s["spectral_abscissa"] = norms.spectral_abscissa;
  s["long_time_rate"] = norms.long_time_rate;
  s["max_E"] = *std::max_element(norms.E.begin(), norms.E.end());
  return out;
}

} // namespace logdecay::pipeline
