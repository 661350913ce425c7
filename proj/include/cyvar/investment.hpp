#ifndef CYVAR_INVESTMENT_HPP
#define CYVAR_INVESTMENT_HPP

#include <string>
#include <vector>

#include "cyvar/model.hpp"

namespace cyvar {

// Gordon-Loeb security breach probability function S(z, v): the residual
// breach probability after investing z against baseline vulnerability v.
//   ClassI:  S(z, v) = v / (a*z + 1)^b,  a > 0, b >= 1
//   ClassII: S(z, v) = v^(a*z + 1),      a > 0 (and v < 1)
// Both equal v at z = 0 and strictly decrease in z.
class BreachProbabilityFunction {
 public:
  enum class Class { ClassI, ClassII };

  static BreachProbabilityFunction class_one(double a, double b);
  static BreachProbabilityFunction class_two(double a);

  Class function_class() const { return class_; }
  double a() const { return a_; }
  double b() const;  // ClassI only

 private:
  BreachProbabilityFunction(Class c, double a, double b);

  Class class_;
  double a_;
  double b_;
};

// Baseline vulnerability v in (0, 1] and the monetary loss if breached.
class VulnerabilityProfile {
 public:
  VulnerabilityProfile(double v, double loss);

  double v() const { return v_; }
  double loss() const { return loss_; }

 private:
  double v_;
  double loss_;
};

double breach_probability(const BreachProbabilityFunction& fn, double investment,
                          const VulnerabilityProfile& profile);

// Expected net benefit of investing z: [v - S(z, v)] * loss - z.
double enbis(const BreachProbabilityFunction& fn, double investment,
             const VulnerabilityProfile& profile);

struct OptimalInvestment {
  double z_star = 0.0;
  double enbis_star = 0.0;
};

// Maximizes the expected net benefit over z in [0, v*loss] by
// golden-section search (bracket width <= 1e-9 * (1 + v*loss)), polishes
// the interior candidate on the analytic derivative, and compares
// explicitly against the z = 0 corner.
OptimalInvestment optimal_investment(const BreachProbabilityFunction& fn,
                                     const VulnerabilityProfile& profile);

// Return on security investment: ((baseline - residual) - cost) / cost.
// Requires cost > 0 and residual <= baseline.
double rosi(double baseline_loss, double residual_loss, double cost);

// A discrete mitigation: buying it multiplies the occurrence probability
// of every covered scenario by probability_multiplier.
class ControlOption {
 public:
  ControlOption(std::string id, double cost, std::vector<std::string> applies_to,
                double probability_multiplier);

  const std::string& id() const { return id_; }
  double cost() const { return cost_; }
  const std::vector<std::string>& applies_to() const { return applies_to_; }
  double probability_multiplier() const { return probability_multiplier_; }

 private:
  std::string id_;
  double cost_;
  std::vector<std::string> applies_to_;  // deduplicated, sorted
  double probability_multiplier_;
};

struct AllocationPlan {
  std::vector<std::string> selected;  // control ids, lexicographic
  double total_cost = 0.0;
  double baseline_cyvar = 0.0;
  double residual_cyvar = 0.0;
  double rosi = 0.0;  // 0 when nothing is selected or the selection is free
  bool exhaustive = true;  // false = greedy heuristic (more than 20 controls)
};

// Picks the feasible subset of controls (total cost <= budget) minimizing
// the residual expected CyVaR; multiple controls on one scenario compose
// multiplicatively. Exhaustive search up to 20 controls with ties broken
// toward the lexicographically smallest selected-id set; a greedy
// best-reduction-per-cost heuristic beyond that, flagged on the plan.
AllocationPlan allocate_budget(const Portfolio& portfolio,
                               const std::vector<ControlOption>& controls,
                               double budget);

namespace detail {

// Golden-section search for the maximum of a unimodal f on [lo, hi];
// returns the final bracket, whose width is at most abs_tol and which
// contains the maximizer.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

template <typename F>
Bracket golden_section_maximize(F&& f, double lo, double hi, double abs_tol) {
  static const double inv_phi = 0.6180339887498949;  // 1/phi
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (hi - lo > abs_tol && iterations++ < 500) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  return {lo, hi};
}

}  // namespace detail

}  // namespace cyvar

#endif  // CYVAR_INVESTMENT_HPP
