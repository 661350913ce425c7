#ifndef CYVAR_MODEL_HPP
#define CYVAR_MODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyvar {

// Layers of the IoT reference architectures, in canonical report order.
enum class LayerId { Perception, Network, Application, Support, Business };

enum class ArchitectureKind { ThreeLayer, FourLayer, FiveLayer };

std::string_view layer_name(LayerId layer);
std::optional<LayerId> layer_from_name(std::string_view name);

std::string_view architecture_name(ArchitectureKind kind);
std::optional<ArchitectureKind> architecture_from_name(std::string_view name);

// Which layers a portfolio may reference. ThreeLayer admits perception,
// network and application; FourLayer adds support; FiveLayer adds business.
class ArchitectureProfile {
 public:
  explicit ArchitectureProfile(ArchitectureKind kind);

  ArchitectureKind kind() const { return kind_; }
  bool admits(LayerId layer) const;
  // Admitted layers in canonical order.
  const std::vector<LayerId>& layers() const { return layers_; }

 private:
  ArchitectureKind kind_;
  std::vector<LayerId> layers_;
};

// Per-period occurrence probability. Must be finite and in [0, 1].
class Probability {
 public:
  explicit Probability(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Non-negative finite monetary value (annualized, unit given by the
// portfolio's currency label).
class MoneyAmount {
 public:
  explicit MoneyAmount(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Confidence level for quantile risk measures; strictly inside (0, 1).
class ConfidenceLevel {
 public:
  explicit ConfidenceLevel(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// Severity of a scenario's loss: a point value or a parametric
// distribution. Every variant has a finite analytic mean, which is the
// scalar the expected-loss engine multiplies.
class LossModel {
 public:
  enum class Kind { Point, Uniform, Triangular, Lognormal };

  static LossModel point(double amount);
  static LossModel uniform(double low, double high);          // low < high
  static LossModel triangular(double low, double mode, double high);
  static LossModel lognormal(double log_mean, double log_stddev);

  Kind kind() const { return kind_; }
  double mean() const;

  double amount() const;      // Point
  double low() const;         // Uniform, Triangular
  double high() const;        // Uniform, Triangular
  double mode() const;        // Triangular
  double log_mean() const;    // Lognormal
  double log_stddev() const;  // Lognormal

 private:
  LossModel(Kind kind, double a, double b, double c);

  Kind kind_;
  double a_;
  double b_;
  double c_;
};

// One adverse event: id, display name, the layer it occupies, its
// per-period occurrence probability and its loss severity.
class Scenario {
 public:
  Scenario(std::string id, std::string name, LayerId layer,
           Probability probability, LossModel loss);

  const std::string& id() const { return id_; }
  const std::string& name() const { return name_; }
  LayerId layer() const { return layer_; }
  const Probability& probability() const { return probability_; }
  const LossModel& loss() const { return loss_; }

 private:
  std::string id_;
  std::string name_;
  LayerId layer_;
  Probability probability_;
  LossModel loss_;
};

// True when id is non-empty and made of [A-Za-z0-9_-] only.
bool valid_scenario_id(std::string_view id);

// A declared architecture plus the scenarios assessed against it.
// Scenario ids are unique and every layer is admitted by the profile.
// Immutable after construction; safe to share across threads.
class Portfolio {
 public:
  Portfolio(std::string name, ArchitectureProfile profile,
            std::vector<Scenario> scenarios, std::string currency_label);

  const std::string& name() const { return name_; }
  const ArchitectureProfile& profile() const { return profile_; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  const std::string& currency_label() const { return currency_label_; }

 private:
  std::string name_;
  ArchitectureProfile profile_;
  std::vector<Scenario> scenarios_;
  std::string currency_label_;
};

}  // namespace cyvar

#endif  // CYVAR_MODEL_HPP
