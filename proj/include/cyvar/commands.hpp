#ifndef CYVAR_COMMANDS_HPP
#define CYVAR_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyvar/portfolio_io.hpp"

namespace cyvar::cli {

// Exit codes shared by every subcommand: 0 success, 1 validation or
// domain error, 2 usage error (bad flags, unreadable files).
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

struct OutputOptions {
  ReportFormat format = ReportFormat::Json;
  std::optional<std::string> output_path;  // default: standard output only
};

struct SimulateOverrides {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> alphas;
  unsigned streams = 1;
};

// Report payloads go to `out` (or --output); diagnostics go to `err` only.
int cmd_validate(const std::string& portfolio_path, std::ostream& out,
                 std::ostream& err);
int cmd_compute(const std::string& portfolio_path, const OutputOptions& options,
                std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& portfolio_path, const SimulateOverrides& overrides,
                 const OutputOptions& options, std::ostream& out, std::ostream& err);
int cmd_optimize(const std::string& portfolio_path, double budget,
                 const OutputOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cyvar::cli

#endif  // CYVAR_COMMANDS_HPP
