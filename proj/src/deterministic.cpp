#include "cyvar/deterministic.hpp"

#include "cyvar/numeric.hpp"

namespace cyvar {

double scenario_cyvar(const Probability& probability, const LossModel& loss) {
  return probability.value() * loss.mean();
}

CyVarBreakdown total_cyvar(const Portfolio& portfolio) {
  CyVarBreakdown out;
  for (LayerId layer : portfolio.profile().layers()) {
    out.per_layer[layer] = 0.0;
  }

  std::map<std::string, LayerId> layer_of;
  for (const Scenario& s : portfolio.scenarios()) {
    out.per_scenario[s.id()] = scenario_cyvar(s.probability(), s.loss());
    layer_of[s.id()] = s.layer();
  }

  // id order makes the sums independent of scenario declaration order.
  std::map<LayerId, NeumaierSum> layer_sums;
  NeumaierSum total;
  for (const auto& [id, value] : out.per_scenario) {
    layer_sums[layer_of[id]].add(value);
    total.add(value);
  }
  for (const auto& [layer, sum] : layer_sums) {
    out.per_layer[layer] = sum.value();
  }
  out.total = total.value();
  return out;
}

}  // namespace cyvar
