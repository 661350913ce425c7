#ifndef CYVAR_DETERMINISTIC_HPP
#define CYVAR_DETERMINISTIC_HPP

#include <map>
#include <string>

#include "cyvar/model.hpp"

namespace cyvar {

// Expected-loss breakdown of a portfolio. "Expected CyVaR" is occurrence
// probability times mean loss, aggregated as-is; it is a different
// quantity from the quantile VaR the Monte Carlo engine reports, and the
// two are labeled distinctly everywhere.
//
// per_layer carries every layer of the portfolio's profile (zero when no
// scenario touches it), so report shapes are stable across inputs.
struct CyVarBreakdown {
  std::map<std::string, double> per_scenario;  // scenario id -> expected CyVaR
  std::map<LayerId, double> per_layer;         // all profile layers
  double total = 0.0;
};

// Expected CyVaR of a single scenario: probability x mean loss.
double scenario_cyvar(const Probability& probability, const LossModel& loss);

// Full breakdown. Accumulation runs over scenarios in id order with
// compensated summation, so the result is identical for any declaration
// order of the scenarios.
CyVarBreakdown total_cyvar(const Portfolio& portfolio);

}  // namespace cyvar

#endif  // CYVAR_DETERMINISTIC_HPP
