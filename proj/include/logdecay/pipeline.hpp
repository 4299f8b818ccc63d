#pragma once

#include "logdecay/core.hpp"
#include "logdecay/generators.hpp"
#include "logdecay/io.hpp"
#include "logdecay/operator_props.hpp"
#include "logdecay/random.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace logdecay::pipeline {

inline constexpr const char *kToolVersion = "0.1.0";

/// Where a matrix came from; echoed into every report.
struct MatrixSource {
  std::string kind; // "file" or "example"
  std::string name; // path or generator name
  io::Json params = io::Json::object();
  ComplexMatrix matrix;
};

/// Generator parameters as they arrive from the command line.
struct ExampleArgs {
  std::string name;
  double lambda = 1.0;
  double delta = 0.5;
  double lambda1 = 1.0;
  double lambda2 = 4.0;
  int dim = 2;
  double alpha = 0.0;
  double beta = 1.0;
  int n = 64;
  std::string kind = "normal-accretive";
  std::uint64_t seed = kDefaultSeed;
};

/// Names: showex2, showex, adr, contrast, identity, nilpotent, random.
MatrixSource make_example(const ExampleArgs &args);
MatrixSource load_matrix(const std::string &path);

struct GridSpec {
  std::optional<double> t_max;
  int n_points = 200;
  std::string clustering = "hybrid"; // or "uniform"
};

struct RunConfig {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tolerances;
  double logconvex_tol = 1e-9;
  CriterionConfig criterion;
  GridSpec grid;
  int angles = 64;
  std::string u0 = "ones";
  bool timestamp = true;
};

struct CommandOutput {
  io::Json report;
  std::string csv;
  bool any_violation = false;
};

TimeGrid<double> build_grid(const ComplexMatrix &a, const GridSpec &spec);

/// e<k> (1-based), ones, random, witness, or a path to a vector JSON file.
ComplexVector resolve_u0(const ComplexMatrix &a, const std::string &spec, const RunConfig &cfg);

CommandOutput cmd_check(const MatrixSource &input, const RunConfig &cfg);
CommandOutput cmd_evolve(const MatrixSource &input, const RunConfig &cfg);
CommandOutput cmd_range(const MatrixSource &input, const RunConfig &cfg);
/// u0 is optional here; an empty cfg.u0 omits the h column.
CommandOutput cmd_norms(const MatrixSource &input, const RunConfig &cfg);

} // namespace logdecay::pipeline
