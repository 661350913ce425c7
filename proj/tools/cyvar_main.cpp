#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyvar/commands.hpp"

namespace {

cyvar::ReportFormat parse_format(const std::string& name) {
  auto format = cyvar::report_format_from_name(name);
  return format ? *format : cyvar::ReportFormat::Json;
}

void add_output_flags(CLI::App* cmd, std::string& format, std::string& output_path) {
  cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  cmd->add_option("--output", output_path, "Write the report to PATH instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyvar - scenario-based cyber value-at-risk for layered IoT portfolios"};
  app.require_subcommand(1);

  std::string validate_file;
  CLI::App* validate = app.add_subcommand("validate", "Check a portfolio document");
  validate->add_option("file", validate_file, "Portfolio document (JSON)")->required();

  std::string compute_file;
  std::string compute_format = "json";
  std::string compute_output;
  CLI::App* compute =
      app.add_subcommand("compute", "Expected CyVaR per scenario, per layer and total");
  compute->add_option("file", compute_file, "Portfolio document (JSON)")->required();
  add_output_flags(compute, compute_format, compute_output);

  std::string simulate_file;
  std::string simulate_format = "json";
  std::string simulate_output;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> alphas;
  unsigned streams = 1;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo loss distribution and quantile VaR");
  simulate->add_option("file", simulate_file, "Portfolio document (JSON)")->required();
  CLI::Option* samples_opt =
      simulate->add_option("--samples", samples, "Number of simulated periods")
          ->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = simulate->add_option("--seed", seed, "Random seed");
  CLI::Option* alpha_opt =
      simulate->add_option("--alpha", alphas, "Confidence levels, e.g. 0.9,0.95,0.99")
          ->delimiter(',');
  simulate->add_option("--streams", streams, "Parallel sampling streams")
      ->check(CLI::PositiveNumber);
  add_output_flags(simulate, simulate_format, simulate_output);

  std::string optimize_file;
  std::string optimize_format = "json";
  std::string optimize_output;
  double budget = 0.0;
  CLI::App* optimize =
      app.add_subcommand("optimize", "Select the control subset minimizing residual CyVaR");
  optimize->add_option("file", optimize_file, "Portfolio document (JSON)")->required();
  optimize->add_option("--budget", budget, "Spending limit for selected controls")
      ->required();
  add_output_flags(optimize, optimize_format, optimize_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? cyvar::cli::kExitOk : cyvar::cli::kExitUsageError;
  }

  if (validate->parsed()) {
    return cyvar::cli::cmd_validate(validate_file, std::cout, std::cerr);
  }
  if (compute->parsed()) {
    cyvar::cli::OutputOptions options{parse_format(compute_format), std::nullopt};
    if (!compute_output.empty()) options.output_path = compute_output;
    return cyvar::cli::cmd_compute(compute_file, options, std::cout, std::cerr);
  }
  if (simulate->parsed()) {
    cyvar::cli::OutputOptions options{parse_format(simulate_format), std::nullopt};
    if (!simulate_output.empty()) options.output_path = simulate_output;
    cyvar::cli::SimulateOverrides overrides;
    if (samples_opt->count() > 0) overrides.samples = samples;
    if (seed_opt->count() > 0) overrides.seed = seed;
    if (alpha_opt->count() > 0) overrides.alphas = alphas;
    overrides.streams = streams;
    return cyvar::cli::cmd_simulate(simulate_file, overrides, options, std::cout,
                                    std::cerr);
  }
  if (optimize->parsed()) {
    cyvar::cli::OutputOptions options{parse_format(optimize_format), std::nullopt};
    if (!optimize_output.empty()) options.output_path = optimize_output;
    return cyvar::cli::cmd_optimize(optimize_file, budget, options, std::cout,
                                    std::cerr);
  }
  return cyvar::cli::kExitUsageError;
}
