#include "cyvar/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <stdexcept>
#include <thread>

#include "cyvar/numeric.hpp"

namespace cyvar {

SimulationConfig::SimulationConfig(std::size_t n_samples, std::uint64_t seed,
                                   std::vector<ConfidenceLevel> confidence_levels,
                                   unsigned n_streams)
    : n_samples_(n_samples),
      seed_(seed),
      confidence_levels_(std::move(confidence_levels)),
      n_streams_(n_streams) {
  if (n_samples_ == 0) {
    throw std::invalid_argument("simulation needs at least one sample");
  }
  if (confidence_levels_.empty()) {
    throw std::invalid_argument("simulation needs at least one confidence level");
  }
  for (std::size_t i = 1; i < confidence_levels_.size(); ++i) {
    if (!(confidence_levels_[i - 1].alpha() < confidence_levels_[i].alpha())) {
      throw std::invalid_argument("confidence levels must be strictly increasing");
    }
  }
  if (n_streams_ == 0) {
    throw std::invalid_argument("stream count must be at least 1");
  }
}

SimulationConfig SimulationConfig::defaults() {
  return SimulationConfig(
      100000, 0,
      {ConfidenceLevel(0.9), ConfidenceLevel(0.95), ConfidenceLevel(0.99)});
}

EmpiricalLossDistribution::EmpiricalLossDistribution(
    std::vector<double> samples, std::map<LayerId, std::vector<double>> layer_samples)
    : samples_(std::move(samples)), layer_samples_(std::move(layer_samples)) {
  for (const auto& [layer, values] : layer_samples_) {
    if (values.size() != samples_.size()) {
      throw std::invalid_argument(
          "layer sample vector length differs from the total sample vector");
    }
  }
  std::sort(samples_.begin(), samples_.end());
  for (auto& [layer, values] : layer_samples_) {
    std::sort(values.begin(), values.end());
  }
}

double sample_loss(const LossModel& model, double u) {
  switch (model.kind()) {
    case LossModel::Kind::Point:
      return model.amount();
    case LossModel::Kind::Uniform:
      return model.low() + u * (model.high() - model.low());
    case LossModel::Kind::Triangular: {
      const double lo = model.low();
      const double md = model.mode();
      const double hi = model.high();
      const double split = (md - lo) / (hi - lo);
      if (u <= split) {
        return lo + std::sqrt(u * (hi - lo) * (md - lo));
      }
      return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - md));
    }
    case LossModel::Kind::Lognormal:
      return std::exp(model.log_mean() + model.log_stddev() * inverse_normal_cdf(u));
  }
  throw std::logic_error("sample_loss: bad loss model kind");
}

double sample_scenario_loss(const Scenario& scenario, const ScenarioDrawKey& key) {
  if (key.uniform(0) >= scenario.probability().value()) {
    return 0.0;
  }
  return sample_loss(scenario.loss(), key.uniform(1));
}

EmpiricalLossDistribution simulate(const Portfolio& portfolio,
                                   const SimulationConfig& config) {
  const auto& scenarios = portfolio.scenarios();
  const auto& layers = portfolio.profile().layers();
  const std::size_t n = config.n_samples();

  if (n > std::numeric_limits<std::size_t>::max() / (layers.size() + 1)) {
    throw std::runtime_error("simulation size overflows the sample buffers");
  }

  std::vector<double> totals;
  std::vector<std::vector<double>> by_layer(layers.size());
  try {
    totals.resize(n, 0.0);
    for (auto& v : by_layer) {
      v.resize(n, 0.0);
    }
  } catch (const std::bad_alloc&) {
    throw std::runtime_error(
        "cannot allocate " + std::to_string(n * (layers.size() + 1)) +
        " samples; reduce --samples or the layer count");
  }

  std::vector<std::size_t> layer_index_of(scenarios.size(), 0);
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    for (std::size_t li = 0; li < layers.size(); ++li) {
      if (layers[li] == scenarios[si].layer()) {
        layer_index_of[si] = li;
        break;
      }
    }
  }

  const std::uint64_t seed = config.seed();
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      double trial_total = 0.0;
      for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const double loss =
            sample_scenario_loss(scenarios[si], ScenarioDrawKey(seed, t, si));
        trial_total += loss;
        by_layer[layer_index_of[si]][t] += loss;
      }
      totals[t] = trial_total;
    }
  };

  const std::size_t n_workers = std::min<std::size_t>(config.n_streams(), n);
  if (n_workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_workers - 1);
    const std::size_t chunk = (n + n_workers - 1) / n_workers;
    for (std::size_t w = 1; w < n_workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(begin + chunk, n);
      if (begin < end) {
        workers.emplace_back(run_range, begin, end);
      }
    }
    run_range(0, std::min(chunk, n));
    for (auto& worker : workers) {
      worker.join();
    }
  }

  // Pre-sort consistency: each trial's layer losses must add back up to
  // the trial total.
  for (std::size_t t = 0; t < n; ++t) {
    double layer_total = 0.0;
    for (const auto& v : by_layer) {
      layer_total += v[t];
    }
    const double scale = std::max(1.0, std::abs(totals[t]));
    if (std::abs(layer_total - totals[t]) > 1e-9 * scale) {
      throw std::logic_error("per-layer losses do not sum to the trial total");
    }
  }

  std::map<LayerId, std::vector<double>> layer_samples;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    layer_samples.emplace(layers[li], std::move(by_layer[li]));
  }
  return EmpiricalLossDistribution(std::move(totals), std::move(layer_samples));
}

std::size_t quantile_rank(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0) {
    throw std::invalid_argument("quantile_rank: alpha in (0,1) and n >= 1 required");
  }
#if defined(__SIZEOF_INT128__)
  // alpha = m * 2^(e-53) with integer m < 2^53, so alpha*n = m*n / 2^shift
  // for shift = 53 - e; take the exact ceiling of that ratio.
  int e = 0;
  const double f = std::frexp(alpha, &e);  // f in [0.5, 1), alpha = f * 2^e
  const auto m = static_cast<unsigned __int128>(std::ldexp(f, 53));
  const int shift = 53 - e;  // e <= 0 for alpha < 1, so shift >= 53
  const unsigned __int128 product = m * static_cast<unsigned __int128>(n);
  if (shift >= 128) {
    return 1;  // alpha*n < 2^117 / 2^128 < 1, and alpha*n > 0
  }
  const unsigned __int128 whole = product >> shift;
  const bool has_remainder =
      (product & ((static_cast<unsigned __int128>(1) << shift) - 1)) != 0;
  const auto k = static_cast<std::size_t>(whole) + (has_remainder ? 1 : 0);
  return std::max<std::size_t>(k, 1);
#else
  const double k = std::ceil(alpha * static_cast<double>(n));
  return std::min<std::size_t>(std::max<std::size_t>(static_cast<std::size_t>(k), 1), n);
#endif
}

double var_at(const std::vector<double>& sorted_samples, const ConfidenceLevel& alpha) {
  if (sorted_samples.empty()) {
    throw std::invalid_argument("value at risk is undefined on an empty sample set");
  }
  const std::size_t k = quantile_rank(alpha.alpha(), sorted_samples.size());
  return sorted_samples[k - 1];
}

double var_at(const EmpiricalLossDistribution& dist, const ConfidenceLevel& alpha) {
  return var_at(dist.samples(), alpha);
}

std::vector<std::pair<double, double>> exceedance_curve(
    const EmpiricalLossDistribution& dist, std::size_t n_points) {
  if (dist.size() == 0) {
    throw std::invalid_argument("exceedance curve is undefined on an empty sample set");
  }
  if (n_points < 2) {
    throw std::invalid_argument("exceedance curve needs at least two points");
  }
  const auto& samples = dist.samples();
  const double lo = samples.front();
  const double hi = samples.back();
  const double n = static_cast<double>(samples.size());

  std::vector<std::pair<double, double>> curve;
  curve.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double threshold = lo + frac * (hi - lo);
    const auto above = samples.end() - std::upper_bound(samples.begin(), samples.end(), threshold);
    curve.emplace_back(threshold, static_cast<double>(above) / n);
  }
  return curve;
}

SimulationReport make_report(const EmpiricalLossDistribution& dist,
                             const SimulationConfig& config,
                             std::size_t curve_points) {
  SimulationReport report;
  report.n_samples = config.n_samples();
  report.seed = config.seed();
  for (const ConfidenceLevel& level : config.confidence_levels()) {
    report.var_by_alpha.emplace_back(level.alpha(), var_at(dist, level));
  }
  for (const auto& [layer, samples] : dist.layer_samples()) {
    auto& rows = report.layer_var_by_alpha[layer];
    for (const ConfidenceLevel& level : config.confidence_levels()) {
      rows.emplace_back(level.alpha(), var_at(samples, level));
    }
  }
  NeumaierSum mean_sum;
  for (double x : dist.samples()) {
    mean_sum.add(x);
  }
  report.empirical_mean = mean_sum.value() / static_cast<double>(dist.size());
  report.exceedance = exceedance_curve(dist, curve_points);
  return report;
}

}  // namespace cyvar
