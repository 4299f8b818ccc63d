// Batch front end: check | evolve | range | norms | matrix.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 numerical failure,
// 3 a property or verdict was violated under --assert.

#include "logdecay/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace logdecay;

struct Options {
  std::string matrix_path;
  pipeline::ExampleArgs example;
  pipeline::RunConfig run;
  std::string report_path = "-";
  std::string csv_path;
  bool assert_mode = false;
  bool no_timestamp = false;
  double t_max = 0.0;
};

void add_common(CLI::App *cmd, Options &o) {
  auto *src = cmd->add_option_group("input");
  src->add_option("--matrix", o.matrix_path, "Matrix JSON file");
  src->add_option("--example", o.example.name,
                  "Named generator: showex2, showex, adr, contrast, identity, nilpotent, random");
  src->require_option(1);
  cmd->add_option("--lambda", o.example.lambda, "showex2: lambda > 0");
  cmd->add_option("--delta", o.example.delta, "showex2/showex: delta");
  cmd->add_option("--lambda1", o.example.lambda1, "showex: lambda1");
  cmd->add_option("--lambda2", o.example.lambda2, "showex: lambda2");
  cmd->add_option("--dim", o.example.dim, "showex/identity: dimension");
  cmd->add_option("--alpha", o.example.alpha, "adr: left end");
  cmd->add_option("--beta", o.example.beta, "adr: right end");
  cmd->add_option("--n", o.example.n, "adr: interior points; random: dimension");
  cmd->add_option("--kind", o.example.kind, "random: family name");
  cmd->add_option("--seed", o.run.seed, "Seed for every randomized step");
  cmd->add_option("--tol", o.run.tolerances.relative, "Relative verdict tolerance");
  cmd->add_option("--samples", o.run.criterion.samples, "Criterion: random samples");
  cmd->add_option("--starts", o.run.criterion.starts, "Criterion: descent starts");
  cmd->add_option("--iterations", o.run.criterion.max_iterations, "Criterion: iterations per start");
  cmd->add_option("--report", o.report_path, "Report JSON path ('-' for stdout)");
  cmd->add_option("--csv", o.csv_path, "CSV output path");
  cmd->add_flag("--assert", o.assert_mode, "Exit 3 if any property or verdict is violated");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp for byte-identical reports");
}

void add_grid(CLI::App *cmd, Options &o) {
  cmd->add_option("--t-max", o.t_max, "Grid end time (default 10 / max(m(A), 0.1))");
  cmd->add_option("--n-points", o.run.grid.n_points, "Grid size")->check(CLI::Range(3, 1000000));
  cmd->add_option("--clustering", o.run.grid.clustering, "hybrid | uniform");
}

pipeline::MatrixSource load_input(const Options &o) {
  if (!o.matrix_path.empty())
    return pipeline::load_matrix(o.matrix_path);
  pipeline::ExampleArgs args = o.example;
  args.seed = o.run.seed;
  return pipeline::make_example(args);
}

void emit(const std::string &path, const std::string &text) {
  if (path == "-")
    std::cout << text;
  else
    io::write_text_file(path, text);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Log-convexity laboratory for e^{-tA} on dense complex matrices"};
  app.require_subcommand(1);
  Options o;

  auto *check = app.add_subcommand("check", "Run all operator property checks");
  add_common(check, o);

  auto *evolve = app.add_subcommand("evolve", "Height function and convexity verdicts");
  add_common(evolve, o);
  add_grid(evolve, o);
  evolve->add_option("--u0", o.run.u0, "e<k>, ones, random, witness, or vector JSON path");

  auto *range = app.add_subcommand("range", "Numerical range boundary samples");
  add_common(range, o);
  range->add_option("--angles", o.run.angles, "Number of angles")->check(CLI::Range(4, 1000000));

  auto *norms = app.add_subcommand("norms", "Operator norm series E(t)");
  add_common(norms, o);
  add_grid(norms, o);
  o.run.u0.clear();
  norms->add_option("--u0", o.run.u0, "Optional initial vector for the h column");

  auto *matrix = app.add_subcommand("matrix", "Write the input matrix as JSON");
  add_common(matrix, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (evolve->parsed() && o.run.u0.empty())
    o.run.u0 = "ones";

  o.run.timestamp = !o.no_timestamp;
  o.run.command = app.get_subcommands().front()->get_name();
  if (o.t_max > 0)
    o.run.grid.t_max = o.t_max;

  try {
    const auto input = load_input(o);
    if (matrix->parsed()) {
      emit(o.report_path, io::dump_matrix(input.matrix) + "\n");
      return 0;
    }
    pipeline::CommandOutput out;
    if (check->parsed())
      out = pipeline::cmd_check(input, o.run);
    else if (evolve->parsed())
      out = pipeline::cmd_evolve(input, o.run);
    else if (range->parsed())
      out = pipeline::cmd_range(input, o.run);
    else
      out = pipeline::cmd_norms(input, o.run);

    emit(o.report_path, out.report.dump(2) + "\n");
    if (!o.csv_path.empty())
      emit(o.csv_path, out.csv);
    if (o.assert_mode && out.any_violation)
      return 3;
    return 0;
  } catch (const NumericalFailure &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const io::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
