#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "cyvar/deterministic.hpp"
#include "cyvar/model.hpp"
#include "cyvar/montecarlo.hpp"

using namespace cyvar;

namespace {

// Brute-force oracle for the quantile definition: the smallest sample
// value l with empirical P(L > l) <= 1 - alpha, found by scanning every
// candidate and counting. The comparison alpha*n <= n - count runs in
// 80-bit long double, which is exact for n <= 2048 (53 mantissa bits of
// alpha plus 11 bits of n fit in the 64-bit significand).
double var_by_scan(std::vector<double> samples, double alpha) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t count_greater =
        n - (std::upper_bound(samples.begin(), samples.end(), samples[i]) -
             samples.begin());
    const long double kept = static_cast<long double>(n - count_greater);
    if (kept >= static_cast<long double>(alpha) * static_cast<long double>(n)) {
      return samples[i];
    }
  }
  return samples.back();
}

Portfolio single_scenario(double p, LossModel loss,
                          LayerId layer = LayerId::Network) {
  std::vector<Scenario> scenarios;
  scenarios.emplace_back("s1", "only", layer, Probability(p), loss);
  return Portfolio("single", ArchitectureProfile(ArchitectureKind::ThreeLayer),
                   std::move(scenarios), "USD");
}

SimulationConfig config_of(std::size_t n, std::uint64_t seed, unsigned streams = 1) {
  return SimulationConfig(n, seed, {ConfidenceLevel(0.9), ConfidenceLevel(0.95)},
                          streams);
}

}  // namespace

TEST_CASE("simulation config rejects invalid shapes") {
  CHECK_THROWS_AS(SimulationConfig(0, 1, {ConfidenceLevel(0.5)}), std::invalid_argument);
  CHECK_THROWS_AS(SimulationConfig(10, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(SimulationConfig(10, 1, {ConfidenceLevel(0.9), ConfidenceLevel(0.9)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimulationConfig(10, 1, {ConfidenceLevel(0.9), ConfidenceLevel(0.5)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimulationConfig(10, 1, {ConfidenceLevel(0.5)}, 0),
                  std::invalid_argument);
  CHECK(SimulationConfig::defaults().n_samples() == 100000);
  CHECK(SimulationConfig::defaults().confidence_levels().size() == 3);
}

TEST_CASE("scenario draw keys are deterministic and produce open-interval uniforms") {
  const ScenarioDrawKey key(42, 7, 3);
  const ScenarioDrawKey same(42, 7, 3);
  const ScenarioDrawKey other(42, 7, 4);
  CHECK(key.uniform(0) == same.uniform(0));
  CHECK(key.uniform(0) != other.uniform(0));
  CHECK(key.uniform(0) != key.uniform(1));
  for (std::uint64_t draw = 0; draw < 1000; ++draw) {
    const double u = key.uniform(draw);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sample_scenario_loss degenerate probabilities") {
  const Scenario always("a", "x", LayerId::Network, Probability(1.0),
                        LossModel::point(100.0));
  const Scenario never("n", "x", LayerId::Network, Probability(0.0),
                       LossModel::uniform(10.0, 20.0));
  const Scenario uniform("u", "x", LayerId::Network, Probability(1.0),
                         LossModel::uniform(10.0, 20.0));
  for (std::uint64_t trial = 0; trial < 2000; ++trial) {
    CHECK(sample_scenario_loss(always, ScenarioDrawKey(1, trial, 0)) == 100.0);
    CHECK(sample_scenario_loss(never, ScenarioDrawKey(1, trial, 0)) == 0.0);
    const double draw = sample_scenario_loss(uniform, ScenarioDrawKey(1, trial, 0));
    CHECK(draw >= 10.0);
    CHECK(draw <= 20.0);
  }
}

TEST_CASE("severity sampling stays inside each model's support") {
  const LossModel tri = LossModel::triangular(5.0, 8.0, 20.0);
  const LossModel logn = LossModel::lognormal(1.0, 0.5);
  for (int i = 1; i < 2000; ++i) {
    const double u = i / 2000.0;
    const double t = sample_loss(tri, u);
    CHECK(t >= 5.0);
    CHECK(t <= 20.0);
    CHECK(sample_loss(logn, u) > 0.0);
  }
  // inverse-CDF hits the mode exactly at the split point
  CHECK(sample_loss(tri, (8.0 - 5.0) / (20.0 - 5.0)) == doctest::Approx(8.0));
}

TEST_CASE("empty portfolio simulates to all-zero losses") {
  const Portfolio empty("none", ArchitectureProfile(ArchitectureKind::ThreeLayer), {},
                        "USD");
  const EmpiricalLossDistribution dist = simulate(empty, config_of(500, 9));
  CHECK(dist.size() == 500);
  for (double x : dist.samples()) CHECK(x == 0.0);
  for (const auto& [layer, samples] : dist.layer_samples()) {
    for (double x : samples) CHECK(x == 0.0);
  }
}

TEST_CASE("certain point scenario gives a degenerate distribution") {
  const EmpiricalLossDistribution dist =
      simulate(single_scenario(1.0, LossModel::point(7.0)), config_of(1000, 3));
  for (double x : dist.samples()) CHECK(x == 7.0);
  CHECK(var_at(dist, ConfidenceLevel(0.01)) == 7.0);
  CHECK(var_at(dist, ConfidenceLevel(0.99)) == 7.0);
}

TEST_CASE("quantile rank is the exact ceiling of alpha*n") {
  CHECK(quantile_rank(0.95, 100) == 95);
  CHECK(quantile_rank(0.5, 2) == 1);
  CHECK(quantile_rank(0.5, 3) == 2);     // ceil(1.5)
  CHECK(quantile_rank(0.75, 4) == 3);    // 0.75 is exactly representable
  CHECK(quantile_rank(0.999, 1) == 1);
  CHECK(quantile_rank(1e-12, 1000000) == 1);
  // the double nearest 0.9 lies above 9/10, so the exact ceiling of
  // its product with 10 is 10, matching the brute-force scan
  CHECK(quantile_rank(0.9, 10) == 10);
  CHECK(quantile_rank(0.9, 10) ==
        static_cast<std::size_t>(
            std::ceil(static_cast<long double>(0.9) * 10.0L)));
  CHECK_THROWS_AS(quantile_rank(0.5, 0), std::invalid_argument);
}

TEST_CASE("var_at matches the spec examples") {
  std::vector<double> ramp;
  for (int i = 1; i <= 100; ++i) ramp.push_back(i);
  const EmpiricalLossDistribution dist(ramp);
  CHECK(var_at(dist, ConfidenceLevel(0.95)) == 95.0);
  CHECK(var_by_scan(ramp, 0.95) == 95.0);

  const EmpiricalLossDistribution flat(std::vector<double>(50, 7.0));
  CHECK(var_at(flat, ConfidenceLevel(0.2)) == 7.0);
  CHECK(var_at(flat, ConfidenceLevel(0.95)) == 7.0);

  const EmpiricalLossDistribution two(std::vector<double>{10.0, 20.0});
  CHECK(var_at(two, ConfidenceLevel(0.5)) == 10.0);
  CHECK(var_by_scan({10.0, 20.0}, 0.5) == 10.0);

  CHECK_THROWS_AS(var_at(EmpiricalLossDistribution(std::vector<double>{}),
                         ConfidenceLevel(0.5)),
                  std::invalid_argument);
}

TEST_CASE("var_at equals the brute-force infimum scan on random sample sets") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> alpha_draw(0.001, 0.999);
  std::uniform_real_distribution<double> value(0.0, 1e6);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 500;
    std::vector<double> samples(n);
    for (double& x : samples) x = value(rng);
    if (round % 3 == 0) {
      // duplicates exercise the tie handling
      for (std::size_t i = 1; i < n; i += 2) samples[i] = samples[i - 1];
    }
    const double alpha = alpha_draw(rng);
    const EmpiricalLossDistribution dist(samples);
    CHECK(var_at(dist, ConfidenceLevel(alpha)) == var_by_scan(samples, alpha));
  }
}

TEST_CASE("VaR is non-decreasing in alpha") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> value(0.0, 1e4);
  std::vector<double> samples(777);
  for (double& x : samples) x = value(rng);
  const EmpiricalLossDistribution dist(samples);
  double previous = 0.0;
  for (double alpha = 0.01; alpha < 1.0; alpha += 0.01) {
    const double v = var_at(dist, ConfidenceLevel(alpha));
    CHECK(v >= previous);
    previous = v;
  }
}

TEST_CASE("stream count does not change the sorted distribution") {
  std::vector<Scenario> scenarios;
  scenarios.emplace_back("a", "x", LayerId::Perception, Probability(0.3),
                         LossModel::uniform(100.0, 500.0));
  scenarios.emplace_back("b", "x", LayerId::Network, Probability(0.7),
                         LossModel::lognormal(4.0, 1.0));
  scenarios.emplace_back("c", "x", LayerId::Application, Probability(0.05),
                         LossModel::triangular(0.0, 1000.0, 5000.0));
  const Portfolio portfolio("multi", ArchitectureProfile(ArchitectureKind::ThreeLayer),
                            std::move(scenarios), "USD");

  const EmpiricalLossDistribution one = simulate(portfolio, config_of(20000, 11, 1));
  const EmpiricalLossDistribution two = simulate(portfolio, config_of(20000, 11, 2));
  const EmpiricalLossDistribution eight = simulate(portfolio, config_of(20000, 11, 8));
  CHECK(one.samples() == two.samples());
  CHECK(one.samples() == eight.samples());
  for (const auto& [layer, samples] : one.layer_samples()) {
    CHECK(samples == two.layer_samples().at(layer));
    CHECK(samples == eight.layer_samples().at(layer));
  }
}

TEST_CASE("uniform scenario VaR converges to the closed-form quantile") {
  const EmpiricalLossDistribution dist =
      simulate(single_scenario(1.0, LossModel::uniform(0.0, 100.0)),
               SimulationConfig(200000, 2024, {ConfidenceLevel(0.95)}));
  const double var95 = var_at(dist, ConfidenceLevel(0.95));
  CHECK(var95 > 94.5);
  CHECK(var95 < 95.5);
}

TEST_CASE("bernoulli scenario VaR snaps to the analytic quantile") {
  // p = 0.1 > 1 - 0.95, so the 95% quantile is the full loss;
  // p = 0.01 < 1 - 0.95, so it is zero.
  const EmpiricalLossDistribution frequent =
      simulate(single_scenario(0.1, LossModel::point(1000.0)),
               SimulationConfig(200000, 77, {ConfidenceLevel(0.95)}));
  CHECK(var_at(frequent, ConfidenceLevel(0.95)) == 1000.0);
  CHECK(var_at(frequent, ConfidenceLevel(0.85)) == 0.0);

  const EmpiricalLossDistribution rare =
      simulate(single_scenario(0.01, LossModel::point(1000.0)),
               SimulationConfig(200000, 77, {ConfidenceLevel(0.95)}));
  CHECK(var_at(rare, ConfidenceLevel(0.95)) == 0.0);
}

TEST_CASE("empirical mean agrees with the deterministic total") {
  std::vector<Scenario> scenarios;
  scenarios.emplace_back("a", "x", LayerId::Perception, Probability(0.1),
                         LossModel::point(1000.0));
  scenarios.emplace_back("b", "x", LayerId::Network, Probability(0.2),
                         LossModel::point(500.0));
  const Portfolio portfolio("bernoulli", ArchitectureProfile(ArchitectureKind::ThreeLayer),
                            std::move(scenarios), "USD");

  const std::size_t n = 400000;
  const EmpiricalLossDistribution dist = simulate(portfolio, config_of(n, 99));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : dist.samples()) {
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  const double standard_error = std::sqrt(variance / n);
  const double expected = total_cyvar(portfolio).total;  // 200
  CHECK(expected == doctest::Approx(200.0));
  CHECK(std::abs(mean - expected) <= 3.0 * standard_error);
}

TEST_CASE("uniform loss mean matches a large sample mean") {
  const LossModel model = LossModel::uniform(25.0, 125.0);
  const std::size_t n = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double x = sample_loss(model, ScenarioDrawKey(5, t, 0).uniform(1));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  const double standard_error = std::sqrt(variance / n);
  CHECK(std::abs(mean - model.mean()) <= 3.0 * standard_error);
}

TEST_CASE("per-layer samples carry the layer's losses only") {
  std::vector<Scenario> scenarios;
  scenarios.emplace_back("net", "x", LayerId::Network, Probability(1.0),
                         LossModel::point(30.0));
  scenarios.emplace_back("app", "x", LayerId::Application, Probability(1.0),
                         LossModel::point(12.0));
  const Portfolio portfolio("layered", ArchitectureProfile(ArchitectureKind::ThreeLayer),
                            std::move(scenarios), "USD");
  const EmpiricalLossDistribution dist = simulate(portfolio, config_of(100, 1));
  for (double x : dist.samples()) CHECK(x == 42.0);
  for (double x : dist.layer_samples().at(LayerId::Network)) CHECK(x == 30.0);
  for (double x : dist.layer_samples().at(LayerId::Application)) CHECK(x == 12.0);
  for (double x : dist.layer_samples().at(LayerId::Perception)) CHECK(x == 0.0);
  CHECK(var_at(dist.layer_samples().at(LayerId::Network), ConfidenceLevel(0.5)) == 30.0);
}

TEST_CASE("exceedance curve endpoints and counting") {
  const EmpiricalLossDistribution zeros(std::vector<double>(10, 0.0));
  const auto degenerate = exceedance_curve(zeros, 2);
  REQUIRE(degenerate.size() == 2);
  CHECK(degenerate[0] == std::pair{0.0, 0.0});
  CHECK(degenerate[1] == std::pair{0.0, 0.0});

  std::vector<double> ramp;
  for (int i = 1; i <= 100; ++i) ramp.push_back(i);
  const EmpiricalLossDistribution dist(ramp);
  const auto curve = exceedance_curve(dist, 100);
  for (const auto& [threshold, probability] : curve) {
    // direct count oracle
    std::size_t count = 0;
    for (double x : ramp) count += x > threshold ? 1 : 0;
    CHECK(probability == doctest::Approx(count / 100.0));
  }
  // spot check from the middle of the ramp
  std::size_t above_fifty = 0;
  for (double x : ramp) above_fifty += x > 50.0 ? 1 : 0;
  CHECK(above_fifty / 100.0 == 0.5);

  CHECK_THROWS_AS(exceedance_curve(dist, 1), std::invalid_argument);
  CHECK_THROWS_AS(exceedance_curve(EmpiricalLossDistribution(std::vector<double>{}), 5),
                  std::invalid_argument);
}

TEST_CASE("exceedance probabilities never increase with the threshold") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> value(0.0, 5000.0);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> samples(200 + rng() % 800);
    for (double& x : samples) x = value(rng);
    const auto curve = exceedance_curve(EmpiricalLossDistribution(samples), 25);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].second <= curve[i - 1].second);
      CHECK(curve[i].first >= curve[i - 1].first);
    }
  }
}

TEST_CASE("simulation reports collect VaR, mean and curve") {
  const Portfolio portfolio = single_scenario(1.0, LossModel::uniform(0.0, 100.0));
  const SimulationConfig config(50000, 13,
                                {ConfidenceLevel(0.5), ConfidenceLevel(0.9),
                                 ConfidenceLevel(0.99)});
  const EmpiricalLossDistribution dist = simulate(portfolio, config);
  const SimulationReport report = make_report(dist, config);
  CHECK(report.n_samples == 50000);
  CHECK(report.seed == 13);
  REQUIRE(report.var_by_alpha.size() == 3);
  CHECK(report.var_by_alpha[0].second <= report.var_by_alpha[1].second);
  CHECK(report.var_by_alpha[1].second <= report.var_by_alpha[2].second);
  CHECK(report.empirical_mean == doctest::Approx(50.0).epsilon(0.02));
  CHECK(report.exceedance.size() == 20);
  CHECK(report.layer_var_by_alpha.size() == 3);
  const auto& network = report.layer_var_by_alpha.at(LayerId::Network);
  REQUIRE(network.size() == 3);
  CHECK(network[1].second == report.var_by_alpha[1].second);
}

TEST_CASE("layer sample vectors must match the total length") {
  std::map<LayerId, std::vector<double>> layers;
  layers[LayerId::Network] = {1.0, 2.0};
  CHECK_THROWS_AS(EmpiricalLossDistribution(std::vector<double>{1.0}, layers),
                  std::invalid_argument);
}
