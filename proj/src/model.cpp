#include "cyvar/model.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyvar {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

std::string describe(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view layer_name(LayerId layer) {
  switch (layer) {
    case LayerId::Perception: return "perception";
    case LayerId::Network: return "network";
    case LayerId::Application: return "application";
    case LayerId::Support: return "support";
    case LayerId::Business: return "business";
  }
  throw std::logic_error("layer_name: bad LayerId");
}

std::optional<LayerId> layer_from_name(std::string_view name) {
  if (name == "perception") return LayerId::Perception;
  if (name == "network") return LayerId::Network;
  if (name == "application") return LayerId::Application;
  if (name == "support") return LayerId::Support;
  if (name == "business") return LayerId::Business;
  return std::nullopt;
}

std::string_view architecture_name(ArchitectureKind kind) {
  switch (kind) {
    case ArchitectureKind::ThreeLayer: return "three_layer";
    case ArchitectureKind::FourLayer: return "four_layer";
    case ArchitectureKind::FiveLayer: return "five_layer";
  }
  throw std::logic_error("architecture_name: bad ArchitectureKind");
}

std::optional<ArchitectureKind> architecture_from_name(std::string_view name) {
  if (name == "three_layer") return ArchitectureKind::ThreeLayer;
  if (name == "four_layer") return ArchitectureKind::FourLayer;
  if (name == "five_layer") return ArchitectureKind::FiveLayer;
  return std::nullopt;
}

ArchitectureProfile::ArchitectureProfile(ArchitectureKind kind) : kind_(kind) {
  layers_ = {LayerId::Perception, LayerId::Network, LayerId::Application};
  if (kind == ArchitectureKind::FourLayer || kind == ArchitectureKind::FiveLayer) {
    layers_.push_back(LayerId::Support);
  }
  if (kind == ArchitectureKind::FiveLayer) {
    layers_.push_back(LayerId::Business);
  }
}

bool ArchitectureProfile::admits(LayerId layer) const {
  for (LayerId l : layers_) {
    if (l == layer) return true;
  }
  return false;
}

Probability::Probability(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    fail("probability must be finite and within [0, 1], got " + describe(value));
  }
}

MoneyAmount::MoneyAmount(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    fail("monetary amount must be finite and non-negative, got " + describe(value));
  }
}

ConfidenceLevel::ConfidenceLevel(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    fail("confidence level must lie strictly inside (0, 1), got " + describe(alpha));
  }
}

LossModel::LossModel(Kind kind, double a, double b, double c)
    : kind_(kind), a_(a), b_(b), c_(c) {}

LossModel LossModel::point(double amount) {
  MoneyAmount checked(amount);
  return LossModel(Kind::Point, checked.value(), 0.0, 0.0);
}

LossModel LossModel::uniform(double low, double high) {
  MoneyAmount lo(low);
  MoneyAmount hi(high);
  if (!(lo.value() < hi.value())) {
    fail("uniform loss requires low < high");
  }
  return LossModel(Kind::Uniform, lo.value(), hi.value(), 0.0);
}

LossModel LossModel::triangular(double low, double mode, double high) {
  MoneyAmount lo(low);
  MoneyAmount md(mode);
  MoneyAmount hi(high);
  if (!(lo.value() <= md.value() && md.value() <= hi.value())) {
    fail("triangular loss requires low <= mode <= high");
  }
  if (!(lo.value() < hi.value())) {
    fail("triangular loss requires low < high");
  }
  return LossModel(Kind::Triangular, lo.value(), md.value(), hi.value());
}

LossModel LossModel::lognormal(double log_mean, double log_stddev) {
  if (!std::isfinite(log_mean) || !std::isfinite(log_stddev)) {
    fail("lognormal parameters must be finite");
  }
  if (!(log_stddev > 0.0)) {
    fail("lognormal log_stddev must be positive");
  }
  const double mean = std::exp(log_mean + 0.5 * log_stddev * log_stddev);
  if (!std::isfinite(mean)) {
    fail("lognormal parameters give a non-finite mean");
  }
  return LossModel(Kind::Lognormal, log_mean, log_stddev, 0.0);
}

double LossModel::mean() const {
  switch (kind_) {
    case Kind::Point: return a_;
    case Kind::Uniform: return 0.5 * (a_ + b_);
    case Kind::Triangular: return (a_ + b_ + c_) / 3.0;
    case Kind::Lognormal: return std::exp(a_ + 0.5 * b_ * b_);
  }
  throw std::logic_error("LossModel::mean: bad kind");
}

double LossModel::amount() const {
  if (kind_ != Kind::Point) throw std::logic_error("amount(): not a point loss");
  return a_;
}

double LossModel::low() const {
  if (kind_ != Kind::Uniform && kind_ != Kind::Triangular) {
    throw std::logic_error("low(): model has no support bounds");
  }
  return a_;
}

double LossModel::high() const {
  if (kind_ == Kind::Uniform) return b_;
  if (kind_ == Kind::Triangular) return c_;
  throw std::logic_error("high(): model has no support bounds");
}

double LossModel::mode() const {
  if (kind_ != Kind::Triangular) throw std::logic_error("mode(): not triangular");
  return b_;
}

double LossModel::log_mean() const {
  if (kind_ != Kind::Lognormal) throw std::logic_error("log_mean(): not lognormal");
  return a_;
}

double LossModel::log_stddev() const {
  if (kind_ != Kind::Lognormal) throw std::logic_error("log_stddev(): not lognormal");
  return b_;
}

bool valid_scenario_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

Scenario::Scenario(std::string id, std::string name, LayerId layer,
                   Probability probability, LossModel loss)
    : id_(std::move(id)),
      name_(std::move(name)),
      layer_(layer),
      probability_(probability),
      loss_(loss) {
  if (!valid_scenario_id(id_)) {
    fail("scenario id must be non-empty and match [A-Za-z0-9_-]+, got \"" + id_ + "\"");
  }
}

Portfolio::Portfolio(std::string name, ArchitectureProfile profile,
                     std::vector<Scenario> scenarios, std::string currency_label)
    : name_(std::move(name)),
      profile_(std::move(profile)),
      scenarios_(std::move(scenarios)),
      currency_label_(std::move(currency_label)) {
  std::set<std::string> seen;
  for (const Scenario& s : scenarios_) {
    if (!seen.insert(s.id()).second) {
      fail("duplicate scenario id \"" + s.id() + "\"");
    }
    if (!profile_.admits(s.layer())) {
      fail("scenario \"" + s.id() + "\" uses layer " + std::string(layer_name(s.layer())) +
           " not admitted by the " + std::string(architecture_name(profile_.kind())) +
           " architecture");
    }
  }
}

}  // namespace cyvar
