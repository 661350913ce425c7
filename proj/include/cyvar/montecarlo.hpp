#ifndef CYVAR_MONTECARLO_HPP
#define CYVAR_MONTECARLO_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cyvar/model.hpp"
#include "cyvar/rng.hpp"

namespace cyvar {

// Simulation parameters. Confidence levels must be strictly increasing.
class SimulationConfig {
 public:
  SimulationConfig(std::size_t n_samples, std::uint64_t seed,
                   std::vector<ConfidenceLevel> confidence_levels,
                   unsigned n_streams = 1);

  // 100000 samples, seed 0, alphas {0.9, 0.95, 0.99}.
  static SimulationConfig defaults();

  std::size_t n_samples() const { return n_samples_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ConfidenceLevel>& confidence_levels() const {
    return confidence_levels_;
  }
  unsigned n_streams() const { return n_streams_; }

 private:
  std::size_t n_samples_;
  std::uint64_t seed_;
  std::vector<ConfidenceLevel> confidence_levels_;
  unsigned n_streams_;
};

// Sorted aggregate-loss samples from one simulation run, overall and per
// layer. Layer vectors have the same length as the total vector; before
// sorting, each trial's layer losses summed to that trial's total (the
// simulator verifies this to 1e-9 relative).
class EmpiricalLossDistribution {
 public:
  // Takes possibly unsorted per-trial values and sorts them. All layer
  // vectors must match the total vector's length.
  explicit EmpiricalLossDistribution(
      std::vector<double> samples,
      std::map<LayerId, std::vector<double>> layer_samples = {});

  const std::vector<double>& samples() const { return samples_; }
  const std::map<LayerId, std::vector<double>>& layer_samples() const {
    return layer_samples_;
  }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<double> samples_;
  std::map<LayerId, std::vector<double>> layer_samples_;
};

// One draw for one scenario in one trial: with the scenario's occurrence
// probability, a severity sampled from its loss model (uniform and
// triangular by inverse CDF, lognormal via the inverse normal CDF);
// otherwise zero.
double sample_scenario_loss(const Scenario& scenario, const ScenarioDrawKey& key);

// Severity draw from a loss model given a uniform in (0, 1).
double sample_loss(const LossModel& model, double u);

// Runs config.n_samples() independent trials over the portfolio. Output
// is a pure function of (portfolio, n_samples, seed): per-trial draws are
// keyed by (seed, trial, scenario), so stream count and scheduling cannot
// change the result. Throws std::runtime_error when the sample buffers
// cannot be allocated.
EmpiricalLossDistribution simulate(const Portfolio& portfolio,
                                   const SimulationConfig& config);

// Smallest integer k >= alpha * n, evaluated exactly on the binary
// representation of alpha (no floating rounding in the product). Result
// lies in [1, n] for alpha in (0, 1).
std::size_t quantile_rank(double alpha, std::size_t n);

// Quantile VaR on sorted samples: the k-th order statistic with
// k = ceil(alpha * n), which is exactly the smallest threshold l with
// empirical P(L > l) <= 1 - alpha. Throws on an empty sample set.
double var_at(const std::vector<double>& sorted_samples, const ConfidenceLevel& alpha);
double var_at(const EmpiricalLossDistribution& dist, const ConfidenceLevel& alpha);

// Loss-exceedance curve: n_points thresholds evenly spaced from the
// smallest to the largest sample, each with empirical P(L > threshold).
// Requires a non-empty distribution and n_points >= 2.
std::vector<std::pair<double, double>> exceedance_curve(
    const EmpiricalLossDistribution& dist, std::size_t n_points);

// Everything a simulation run reports: VaR per confidence level (overall
// and per layer), the empirical mean and the exceedance curve.
struct SimulationReport {
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> var_by_alpha;  // ascending alpha
  std::map<LayerId, std::vector<std::pair<double, double>>> layer_var_by_alpha;
  double empirical_mean = 0.0;
  std::vector<std::pair<double, double>> exceedance;  // threshold -> P(L > t)
};

SimulationReport make_report(const EmpiricalLossDistribution& dist,
                             const SimulationConfig& config,
                             std::size_t curve_points = 20);

}  // namespace cyvar

#endif  // CYVAR_MONTECARLO_HPP
