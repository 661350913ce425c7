#include "cyvar/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cyvar::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    return std::nullopt;
  }
  return buffer.str();
}

// Loads and fully validates a document. On failure prints diagnostics to
// `err` and returns the exit code in `status`.
std::optional<PortfolioDocument> load_document(const std::string& path,
                                               std::ostream& err, int& status) {
  auto text = read_file(path);
  if (!text) {
    err << "cyvar: cannot read portfolio file: " << path << "\n";
    status = kExitUsageError;
    return std::nullopt;
  }
  ParseResult parsed = parse_portfolio(*text);
  if (!parsed.ok()) {
    for (const ValidationError& e : parsed.errors) {
      err << e.path << ": " << validation_code_name(e.code) << ": " << e.message << "\n";
    }
    status = kExitDomainError;
    return std::nullopt;
  }
  status = kExitOk;
  return std::move(parsed.document);
}

int emit(const std::string& payload, const OutputOptions& options, std::ostream& out,
         std::ostream& err) {
  if (!options.output_path) {
    out << payload;
    return kExitOk;
  }
  std::ofstream file(*options.output_path, std::ios::binary);
  if (!file) {
    err << "cyvar: cannot open output file: " << *options.output_path << "\n";
    return kExitUsageError;
  }
  file << payload;
  file.flush();
  if (!file) {
    err << "cyvar: failed writing output file: " << *options.output_path << "\n";
    return kExitUsageError;
  }
  return kExitOk;
}

}  // namespace

int cmd_validate(const std::string& portfolio_path, std::ostream& out,
                 std::ostream& err) {
  int status = kExitOk;
  auto document = load_document(portfolio_path, err, status);
  if (!document) {
    return status;
  }
  out << "OK\n";
  return kExitOk;
}

int cmd_compute(const std::string& portfolio_path, const OutputOptions& options,
                std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  auto document = load_document(portfolio_path, err, status);
  if (!document) {
    return status;
  }
  const CyVarBreakdown breakdown = total_cyvar(document->portfolio);
  const std::string payload =
      serialize_report(breakdown, document->portfolio.currency_label(), options.format);
  return emit(payload, options, out, err);
}

int cmd_simulate(const std::string& portfolio_path, const SimulateOverrides& overrides,
                 const OutputOptions& options, std::ostream& out, std::ostream& err) {
  if (overrides.streams == 0) {
    err << "cyvar: --streams must be at least 1\n";
    return kExitUsageError;
  }
  if (overrides.samples && *overrides.samples == 0) {
    err << "cyvar: --samples must be at least 1\n";
    return kExitUsageError;
  }

  std::optional<std::vector<double>> alphas = overrides.alphas;
  if (alphas) {
    if (alphas->empty()) {
      err << "cyvar: --alpha needs at least one confidence level\n";
      return kExitUsageError;
    }
    for (double a : *alphas) {
      if (!(std::isfinite(a) && a > 0.0 && a < 1.0)) {
        err << "cyvar: --alpha values must lie strictly inside (0, 1)\n";
        return kExitUsageError;
      }
    }
    std::sort(alphas->begin(), alphas->end());
    alphas->erase(std::unique(alphas->begin(), alphas->end()), alphas->end());
  }

  int status = kExitOk;
  auto document = load_document(portfolio_path, err, status);
  if (!document) {
    return status;
  }

  const SimulationDefaults& defaults = document->simulation;
  const std::size_t n_samples =
      overrides.samples.value_or(defaults.n_samples.value_or(100000));
  const std::uint64_t seed = overrides.seed.value_or(defaults.seed.value_or(0));
  const std::vector<double> levels = alphas.value_or(
      defaults.confidence_levels.value_or(std::vector<double>{0.9, 0.95, 0.99}));

  std::vector<ConfidenceLevel> confidence_levels;
  confidence_levels.reserve(levels.size());
  for (double a : levels) {
    confidence_levels.emplace_back(a);
  }

  try {
    SimulationConfig config(n_samples, seed, std::move(confidence_levels),
                            overrides.streams);
    EmpiricalLossDistribution dist = simulate(document->portfolio, config);
    SimulationReport report = make_report(dist, config);
    const std::string payload =
        serialize_report(report, document->portfolio.currency_label(), options.format);
    return emit(payload, options, out, err);
  } catch (const std::runtime_error& e) {
    err << "cyvar: " << e.what() << "\n";
    return kExitDomainError;
  }
}

int cmd_optimize(const std::string& portfolio_path, double budget,
                 const OutputOptions& options, std::ostream& out, std::ostream& err) {
  if (!(budget >= 0.0)) {
    err << "cyvar: --budget must be non-negative\n";
    return kExitUsageError;
  }
  int status = kExitOk;
  auto document = load_document(portfolio_path, err, status);
  if (!document) {
    return status;
  }
  if (document->controls.empty()) {
    err << "cyvar: portfolio declares no controls; nothing to optimize\n";
    return kExitDomainError;
  }
  const AllocationPlan plan =
      allocate_budget(document->portfolio, document->controls, budget);
  const std::string payload =
      serialize_report(plan, document->portfolio.currency_label(), options.format);
  return emit(payload, options, out, err);
}

}  // namespace cyvar::cli
