#include "cyvar/investment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "cyvar/numeric.hpp"

namespace cyvar {

BreachProbabilityFunction::BreachProbabilityFunction(Class c, double a, double b)
    : class_(c), a_(a), b_(b) {}

BreachProbabilityFunction BreachProbabilityFunction::class_one(double a, double b) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::invalid_argument("breach function requires a > 0");
  }
  if (!(std::isfinite(b) && b >= 1.0)) {
    throw std::invalid_argument("class-one breach function requires b >= 1");
  }
  return BreachProbabilityFunction(Class::ClassI, a, b);
}

BreachProbabilityFunction BreachProbabilityFunction::class_two(double a) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::invalid_argument("breach function requires a > 0");
  }
  return BreachProbabilityFunction(Class::ClassII, a, 0.0);
}

double BreachProbabilityFunction::b() const {
  if (class_ != Class::ClassI) {
    throw std::logic_error("b(): class-two breach function has no exponent");
  }
  return b_;
}

VulnerabilityProfile::VulnerabilityProfile(double v, double loss) : v_(v), loss_(loss) {
  if (!(std::isfinite(v) && v > 0.0 && v <= 1.0)) {
    throw std::invalid_argument("vulnerability must lie in (0, 1]");
  }
  MoneyAmount checked(loss);
  loss_ = checked.value();
}

namespace {

void require_compatible(const BreachProbabilityFunction& fn,
                        const VulnerabilityProfile& profile) {
  if (fn.function_class() == BreachProbabilityFunction::Class::ClassII &&
      profile.v() >= 1.0) {
    throw std::invalid_argument("class-two breach function requires v < 1");
  }
}

// d/dz of [v - S(z, v)] * loss - z.
double enbis_derivative(const BreachProbabilityFunction& fn, double z,
                        const VulnerabilityProfile& profile) {
  const double v = profile.v();
  const double loss = profile.loss();
  if (fn.function_class() == BreachProbabilityFunction::Class::ClassI) {
    return v * fn.a() * fn.b() * std::pow(fn.a() * z + 1.0, -(fn.b() + 1.0)) * loss - 1.0;
  }
  const double s = std::pow(v, fn.a() * z + 1.0);
  return -fn.a() * std::log(v) * s * loss - 1.0;
}

}  // namespace

double breach_probability(const BreachProbabilityFunction& fn, double investment,
                          const VulnerabilityProfile& profile) {
  if (!(std::isfinite(investment) && investment >= 0.0)) {
    throw std::invalid_argument("investment must be finite and non-negative");
  }
  require_compatible(fn, profile);
  if (fn.function_class() == BreachProbabilityFunction::Class::ClassI) {
    return profile.v() / std::pow(fn.a() * investment + 1.0, fn.b());
  }
  return std::pow(profile.v(), fn.a() * investment + 1.0);
}

double enbis(const BreachProbabilityFunction& fn, double investment,
             const VulnerabilityProfile& profile) {
  const double s = breach_probability(fn, investment, profile);
  return (profile.v() - s) * profile.loss() - investment;
}

OptimalInvestment optimal_investment(const BreachProbabilityFunction& fn,
                                     const VulnerabilityProfile& profile) {
  require_compatible(fn, profile);
  const double exposure = profile.v() * profile.loss();
  if (exposure <= 0.0) {
    return {0.0, 0.0};
  }

  const double tol = 1e-9 * (1.0 + exposure);
  auto objective = [&](double z) { return enbis(fn, z, profile); };
  const detail::Bracket bracket =
      detail::golden_section_maximize(objective, 0.0, exposure, tol);

  // Value comparisons cannot localize a flat maximum past the floating
  // noise floor, so the section result is polished on the analytic
  // derivative, which is strictly decreasing (the benefit is concave):
  // widen around the bracket until the derivative straddles zero, then
  // bisect the sign change.
  const double center = 0.5 * (bracket.lo + bracket.hi);
  double width = std::max(bracket.hi - bracket.lo, tol);
  double lo = std::max(0.0, center - width);
  double hi = std::min(exposure, center + width);
  while (lo > 0.0 && enbis_derivative(fn, lo, profile) <= 0.0) {
    width *= 4.0;
    lo = std::max(0.0, center - width);
  }
  while (hi < exposure && enbis_derivative(fn, hi, profile) >= 0.0) {
    width *= 4.0;
    hi = std::min(exposure, center + width);
  }

  double z;
  if (enbis_derivative(fn, lo, profile) <= 0.0) {
    z = lo;  // covers the z = 0 corner
  } else if (enbis_derivative(fn, hi, profile) >= 0.0) {
    z = hi;
  } else {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (enbis_derivative(fn, mid, profile) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    z = 0.5 * (lo + hi);
  }

  const double value = enbis(fn, z, profile);
  if (z <= 0.0 || value <= 0.0) {
    return {0.0, 0.0};  // the do-nothing corner wins
  }
  return {z, value};
}

double rosi(double baseline_loss, double residual_loss, double cost) {
  if (!(std::isfinite(cost) && cost > 0.0)) {
    throw std::invalid_argument("rosi requires a positive cost");
  }
  if (!(std::isfinite(baseline_loss) && std::isfinite(residual_loss)) ||
      residual_loss > baseline_loss) {
    throw std::invalid_argument("rosi requires residual <= baseline");
  }
  return ((baseline_loss - residual_loss) - cost) / cost;
}

ControlOption::ControlOption(std::string id, double cost,
                             std::vector<std::string> applies_to,
                             double probability_multiplier)
    : id_(std::move(id)),
      cost_(cost),
      applies_to_(std::move(applies_to)),
      probability_multiplier_(probability_multiplier) {
  if (id_.empty()) {
    throw std::invalid_argument("control id must be non-empty");
  }
  MoneyAmount checked(cost_);
  if (applies_to_.empty()) {
    throw std::invalid_argument("control \"" + id_ + "\" must cover at least one scenario");
  }
  if (!(std::isfinite(probability_multiplier_) && probability_multiplier_ >= 0.0 &&
        probability_multiplier_ <= 1.0)) {
    throw std::invalid_argument("probability multiplier must lie in [0, 1]");
  }
  std::sort(applies_to_.begin(), applies_to_.end());
  applies_to_.erase(std::unique(applies_to_.begin(), applies_to_.end()),
                    applies_to_.end());
}

namespace {

struct ScenarioCell {
  double probability = 0.0;
  double mean_loss = 0.0;
  std::vector<std::size_t> covering_controls;  // indices into sorted controls
};

// Residual expected CyVaR for one selection, summed over scenarios in id
// order with multipliers applied in control-id order.
double residual_for(const std::vector<ScenarioCell>& cells,
                    const std::vector<ControlOption>& controls,
                    const std::vector<bool>& selected) {
  NeumaierSum sum;
  for (const ScenarioCell& cell : cells) {
    double p = cell.probability;
    for (std::size_t ci : cell.covering_controls) {
      if (selected[ci]) {
        p *= controls[ci].probability_multiplier();
      }
    }
    sum.add(p * cell.mean_loss);
  }
  return sum.value();
}

std::vector<std::string> selected_ids(const std::vector<ControlOption>& controls,
                                      const std::vector<bool>& selected) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (selected[i]) ids.push_back(controls[i].id());
  }
  return ids;  // controls are id-sorted, so this is lexicographic
}

double selection_cost(const std::vector<ControlOption>& controls,
                      const std::vector<bool>& selected) {
  double cost = 0.0;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (selected[i]) cost += controls[i].cost();
  }
  return cost;
}

}  // namespace

AllocationPlan allocate_budget(const Portfolio& portfolio,
                               const std::vector<ControlOption>& controls,
                               double budget) {
  if (!(std::isfinite(budget) && budget >= 0.0)) {
    throw std::invalid_argument("budget must be finite and non-negative");
  }

  std::vector<ControlOption> sorted = controls;
  std::sort(sorted.begin(), sorted.end(),
            [](const ControlOption& a, const ControlOption& b) { return a.id() < b.id(); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].id() == sorted[i].id()) {
      throw std::invalid_argument("duplicate control id \"" + sorted[i].id() + "\"");
    }
  }

  // Scenario cells in id order, mirroring the deterministic engine.
  std::map<std::string, std::size_t> cell_of;
  std::vector<ScenarioCell> cells;
  {
    std::map<std::string, const Scenario*> by_id;
    for (const Scenario& s : portfolio.scenarios()) {
      by_id[s.id()] = &s;
    }
    for (const auto& [id, s] : by_id) {
      cell_of[id] = cells.size();
      cells.push_back({s->probability().value(), s->loss().mean(), {}});
    }
  }
  for (std::size_t ci = 0; ci < sorted.size(); ++ci) {
    for (const std::string& sid : sorted[ci].applies_to()) {
      auto it = cell_of.find(sid);
      if (it == cell_of.end()) {
        throw std::invalid_argument("control \"" + sorted[ci].id() +
                                    "\" references unknown scenario \"" + sid + "\"");
      }
      cells[it->second].covering_controls.push_back(ci);
    }
  }

  const std::size_t n = sorted.size();
  std::vector<bool> none(n, false);
  const double baseline = residual_for(cells, sorted, none);

  AllocationPlan plan;
  plan.baseline_cyvar = baseline;
  plan.residual_cyvar = baseline;

  if (n == 0) {
    return plan;
  }

  if (n <= 20) {
    std::vector<bool> best = none;
    double best_residual = baseline;
    double best_cost = 0.0;
    std::vector<std::string> best_ids;
    std::vector<bool> candidate(n, false);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) {
        candidate[i] = (mask >> i) & 1;
      }
      const double cost = selection_cost(sorted, candidate);
      if (cost > budget) {
        continue;
      }
      const double residual = residual_for(cells, sorted, candidate);
      if (residual < best_residual) {
        best = candidate;
        best_residual = residual;
        best_cost = cost;
        best_ids = selected_ids(sorted, candidate);
      } else if (residual == best_residual) {
        std::vector<std::string> ids = selected_ids(sorted, candidate);
        if (best_ids.empty() ? false : ids < best_ids) {
          best = candidate;
          best_cost = cost;
          best_ids = std::move(ids);
        }
      }
    }
    plan.selected = std::move(best_ids);
    plan.total_cost = best_cost;
    plan.residual_cyvar = best_residual;
    plan.exhaustive = true;
  } else {
    // Greedy: repeatedly buy the affordable control with the best CyVaR
    // reduction per unit cost; optimality is not guaranteed here.
    std::vector<bool> chosen(n, false);
    double current = baseline;
    double spent = 0.0;
    while (true) {
      std::size_t pick = n;
      double pick_score = 0.0;
      double pick_residual = current;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || spent + sorted[i].cost() > budget) {
          continue;
        }
        chosen[i] = true;
        const double residual = residual_for(cells, sorted, chosen);
        chosen[i] = false;
        const double reduction = current - residual;
        if (reduction <= 0.0) {
          continue;
        }
        const double score =
            sorted[i].cost() > 0.0 ? reduction / sorted[i].cost()
                                   : std::numeric_limits<double>::infinity();
        if (pick == n || score > pick_score) {
          pick = i;
          pick_score = score;
          pick_residual = residual;
        }
      }
      if (pick == n) {
        break;
      }
      chosen[pick] = true;
      spent += sorted[pick].cost();
      current = pick_residual;
    }
    plan.selected = selected_ids(sorted, chosen);
    plan.total_cost = spent;
    plan.residual_cyvar = current;
    plan.exhaustive = false;
  }

  if (!plan.selected.empty() && plan.total_cost > 0.0) {
    plan.rosi = rosi(plan.baseline_cyvar, plan.residual_cyvar, plan.total_cost);
  }
  return plan;
}

}  // namespace cyvar
