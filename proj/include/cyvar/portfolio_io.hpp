#ifndef CYVAR_PORTFOLIO_IO_HPP
#define CYVAR_PORTFOLIO_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyvar/deterministic.hpp"
#include "cyvar/investment.hpp"
#include "cyvar/model.hpp"
#include "cyvar/montecarlo.hpp"

namespace cyvar {

enum class ValidationCode {
  OutOfRange,
  UnknownLayer,
  DuplicateId,
  DanglingReference,
  BadSchema,
  MalformedNumber,
};

std::string_view validation_code_name(ValidationCode code);

// One problem found in a document, anchored to the field that caused it
// (e.g. "scenarios[2].probability"). Violations between two fields are
// reported once per involved field so the offending location is always
// named.
struct ValidationError {
  std::string path;
  ValidationCode code;
  std::string message;
};

// Optional simulation parameters carried by the document; command-line
// flags override these, and built-in defaults fill whatever remains.
struct SimulationDefaults {
  std::optional<std::size_t> n_samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> confidence_levels;

  bool any() const {
    return n_samples.has_value() || seed.has_value() || confidence_levels.has_value();
  }
};

// A parsed portfolio document: the portfolio itself, its control catalog
// and its simulation defaults.
struct PortfolioDocument {
  int schema_version;
  Portfolio portfolio;
  std::vector<ControlOption> controls;
  SimulationDefaults simulation;
};

// Either a fully validated document or the complete list of validation
// errors; parsing never stops at the first problem.
struct ParseResult {
  std::optional<PortfolioDocument> document;
  std::vector<ValidationError> errors;

  bool ok() const { return document.has_value(); }
};

ParseResult parse_portfolio(std::string_view text);

// Canonical document bytes: sorted keys, declaration-ordered scenarios,
// shortest round-trip numbers. parse_portfolio(serialize_portfolio(d))
// reproduces an equivalent document.
std::string serialize_portfolio(const PortfolioDocument& doc);

enum class ReportFormat { Json, Csv, Table };

std::optional<ReportFormat> report_format_from_name(std::string_view name);

// Deterministic report rendering: identical reports give identical bytes
// for json and csv. Scenario rows are ordered by id, layer rows in
// canonical layer order, numbers as shortest round-trip decimals; CSV
// uses RFC-4180 quoting. The table format is for eyeballs only and is
// not covered by the byte-determinism guarantee.
std::string serialize_report(const CyVarBreakdown& breakdown,
                             const std::string& currency, ReportFormat format);
std::string serialize_report(const SimulationReport& report,
                             const std::string& currency, ReportFormat format);
std::string serialize_report(const AllocationPlan& plan, const std::string& currency,
                             ReportFormat format);

}  // namespace cyvar

#endif  // CYVAR_PORTFOLIO_IO_HPP
