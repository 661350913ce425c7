#include "cyvar/portfolio_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace cyvar {

using nlohmann::json;

std::string_view validation_code_name(ValidationCode code) {
  switch (code) {
    case ValidationCode::OutOfRange: return "OutOfRange";
    case ValidationCode::UnknownLayer: return "UnknownLayer";
    case ValidationCode::DuplicateId: return "DuplicateId";
    case ValidationCode::DanglingReference: return "DanglingReference";
    case ValidationCode::BadSchema: return "BadSchema";
    case ValidationCode::MalformedNumber: return "MalformedNumber";
  }
  return "BadSchema";
}

namespace {

std::string format_number(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Errors {
 public:
  explicit Errors(std::vector<ValidationError>& sink) : sink_(sink) {}

  void add(std::string path, ValidationCode code, std::string message) {
    sink_.push_back({std::move(path), code, std::move(message)});
  }

  // Cross-field violations are anchored to every involved field.
  void add_pair(const std::string& path_a, const std::string& path_b,
                ValidationCode code, const std::string& message) {
    add(path_a, code, message);
    add(path_b, code, message);
  }

  bool empty() const { return sink_.empty(); }

 private:
  std::vector<ValidationError>& sink_;
};

void check_unknown_keys(const json& obj, const std::string& prefix,
                        const std::set<std::string>& known, Errors& errors) {
  for (const auto& item : obj.items()) {
    if (known.find(item.key()) == known.end()) {
      errors.add(prefix.empty() ? item.key() : prefix + "." + item.key(),
                 ValidationCode::BadSchema, "unknown field");
    }
  }
}

// Returns the field value when present, otherwise records a BadSchema
// error at the field path.
const json* require_field(const json& obj, const char* key, const std::string& path,
                          Errors& errors) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    errors.add(path, ValidationCode::BadSchema, "missing required field");
    return nullptr;
  }
  return &*it;
}

std::optional<std::string> read_string(const json& value, const std::string& path,
                                       Errors& errors) {
  if (!value.is_string()) {
    errors.add(path, ValidationCode::BadSchema, "must be a string");
    return std::nullopt;
  }
  return value.get<std::string>();
}

std::optional<double> read_number(const json& value, const std::string& path,
                                  Errors& errors) {
  if (!value.is_number()) {
    errors.add(path, ValidationCode::MalformedNumber, "must be a number");
    return std::nullopt;
  }
  return value.get<double>();
}

// Non-negative monetary field.
std::optional<double> read_money(const json& value, const std::string& path,
                                 Errors& errors) {
  auto number = read_number(value, path, errors);
  if (!number) return std::nullopt;
  if (!(std::isfinite(*number) && *number >= 0.0)) {
    errors.add(path, ValidationCode::OutOfRange, "must be finite and non-negative");
    return std::nullopt;
  }
  return number;
}

struct ParsedLoss {
  std::optional<LossModel> model;
};

ParsedLoss read_loss(const json& value, const std::string& path, Errors& errors) {
  if (!value.is_object()) {
    errors.add(path, ValidationCode::BadSchema, "must be an object");
    return {};
  }
  const json* kind_field = require_field(value, "kind", path + ".kind", errors);
  if (!kind_field) return {};
  auto kind = read_string(*kind_field, path + ".kind", errors);
  if (!kind) return {};

  auto known_for = [&](std::initializer_list<const char*> keys) {
    std::set<std::string> known = {"kind"};
    known.insert(keys.begin(), keys.end());
    check_unknown_keys(value, path, known, errors);
  };

  if (*kind == "point") {
    known_for({"amount"});
    const json* amount = require_field(value, "amount", path + ".amount", errors);
    if (!amount) return {};
    auto money = read_money(*amount, path + ".amount", errors);
    if (!money) return {};
    return {LossModel::point(*money)};
  }

  if (*kind == "uniform") {
    known_for({"low", "high"});
    const json* low_f = require_field(value, "low", path + ".low", errors);
    const json* high_f = require_field(value, "high", path + ".high", errors);
    if (!low_f || !high_f) return {};
    auto low = read_money(*low_f, path + ".low", errors);
    auto high = read_money(*high_f, path + ".high", errors);
    if (!low || !high) return {};
    if (!(*low < *high)) {
      errors.add_pair(path + ".low", path + ".high", ValidationCode::OutOfRange,
                      "low must be strictly below high");
      return {};
    }
    return {LossModel::uniform(*low, *high)};
  }

  if (*kind == "triangular") {
    known_for({"low", "mode", "high"});
    const json* low_f = require_field(value, "low", path + ".low", errors);
    const json* mode_f = require_field(value, "mode", path + ".mode", errors);
    const json* high_f = require_field(value, "high", path + ".high", errors);
    if (!low_f || !mode_f || !high_f) return {};
    auto low = read_money(*low_f, path + ".low", errors);
    auto mode = read_money(*mode_f, path + ".mode", errors);
    auto high = read_money(*high_f, path + ".high", errors);
    if (!low || !mode || !high) return {};
    bool ordered = true;
    if (!(*low <= *mode)) {
      errors.add_pair(path + ".low", path + ".mode", ValidationCode::OutOfRange,
                      "low must not exceed mode");
      ordered = false;
    }
    if (!(*mode <= *high)) {
      errors.add_pair(path + ".mode", path + ".high", ValidationCode::OutOfRange,
                      "mode must not exceed high");
      ordered = false;
    }
    if (ordered && !(*low < *high)) {
      errors.add_pair(path + ".low", path + ".high", ValidationCode::OutOfRange,
                      "low must be strictly below high");
      ordered = false;
    }
    if (!ordered) return {};
    return {LossModel::triangular(*low, *mode, *high)};
  }

  if (*kind == "lognormal") {
    known_for({"log_mean", "log_stddev"});
    const json* mean_f = require_field(value, "log_mean", path + ".log_mean", errors);
    const json* sd_f = require_field(value, "log_stddev", path + ".log_stddev", errors);
    if (!mean_f || !sd_f) return {};
    auto log_mean = read_number(*mean_f, path + ".log_mean", errors);
    auto log_sd = read_number(*sd_f, path + ".log_stddev", errors);
    if (!log_mean || !log_sd) return {};
    bool ok = true;
    if (!std::isfinite(*log_mean)) {
      errors.add(path + ".log_mean", ValidationCode::OutOfRange, "must be finite");
      ok = false;
    }
    if (!(std::isfinite(*log_sd) && *log_sd > 0.0)) {
      errors.add(path + ".log_stddev", ValidationCode::OutOfRange, "must be positive");
      ok = false;
    }
    if (ok && !std::isfinite(std::exp(*log_mean + 0.5 * *log_sd * *log_sd))) {
      errors.add(path + ".log_mean", ValidationCode::OutOfRange,
                 "parameters give a non-finite mean loss");
      ok = false;
    }
    if (!ok) return {};
    return {LossModel::lognormal(*log_mean, *log_sd)};
  }

  errors.add(path + ".kind", ValidationCode::BadSchema,
             "must be one of point, uniform, triangular, lognormal");
  return {};
}

}  // namespace

ParseResult parse_portfolio(std::string_view text) {
  ParseResult result;
  Errors errors(result.errors);

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    errors.add("$", ValidationCode::BadSchema, e.what());
    return result;
  }
  if (!doc.is_object()) {
    errors.add("$", ValidationCode::BadSchema, "document root must be an object");
    return result;
  }

  check_unknown_keys(doc, "",
                     {"schema_version", "name", "architecture", "currency",
                      "scenarios", "controls", "simulation"},
                     errors);

  int schema_version = 1;
  if (const json* field = require_field(doc, "schema_version", "schema_version", errors)) {
    if (!field->is_number_integer()) {
      errors.add("schema_version", ValidationCode::MalformedNumber, "must be an integer");
    } else if (field->get<std::int64_t>() != 1) {
      errors.add("schema_version", ValidationCode::BadSchema,
                 "unsupported schema version (expected 1)");
    } else {
      schema_version = 1;
    }
  }

  std::string name;
  if (const json* field = require_field(doc, "name", "name", errors)) {
    if (auto value = read_string(*field, "name", errors)) {
      name = *value;
    }
  }

  std::optional<ArchitectureProfile> profile;
  if (const json* field = require_field(doc, "architecture", "architecture", errors)) {
    if (auto value = read_string(*field, "architecture", errors)) {
      if (auto kind = architecture_from_name(*value)) {
        profile.emplace(*kind);
      } else {
        errors.add("architecture", ValidationCode::BadSchema,
                   "must be one of three_layer, four_layer, five_layer");
      }
    }
  }

  std::string currency;
  if (const json* field = require_field(doc, "currency", "currency", errors)) {
    if (auto value = read_string(*field, "currency", errors)) {
      currency = *value;
    }
  }

  std::vector<Scenario> scenarios;
  std::set<std::string> scenario_ids;
  if (const json* field = require_field(doc, "scenarios", "scenarios", errors)) {
    if (!field->is_array()) {
      errors.add("scenarios", ValidationCode::BadSchema, "must be an array");
    } else {
      for (std::size_t i = 0; i < field->size(); ++i) {
        const json& entry = (*field)[i];
        const std::string path = "scenarios[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
          errors.add(path, ValidationCode::BadSchema, "must be an object");
          continue;
        }
        check_unknown_keys(entry, path, {"id", "name", "layer", "probability", "loss"},
                           errors);

        std::optional<std::string> id;
        if (const json* f = require_field(entry, "id", path + ".id", errors)) {
          if (auto value = read_string(*f, path + ".id", errors)) {
            if (!valid_scenario_id(*value)) {
              errors.add(path + ".id", ValidationCode::BadSchema,
                         "must be non-empty and match [A-Za-z0-9_-]+");
            } else if (!scenario_ids.insert(*value).second) {
              errors.add(path + ".id", ValidationCode::DuplicateId,
                         "duplicate scenario id \"" + *value + "\"");
            } else {
              id = *value;
            }
          }
        }

        std::optional<std::string> display_name;
        if (const json* f = require_field(entry, "name", path + ".name", errors)) {
          display_name = read_string(*f, path + ".name", errors);
        }

        std::optional<LayerId> layer;
        if (const json* f = require_field(entry, "layer", path + ".layer", errors)) {
          if (auto value = read_string(*f, path + ".layer", errors)) {
            layer = layer_from_name(*value);
            if (!layer) {
              errors.add(path + ".layer", ValidationCode::UnknownLayer,
                         "unknown layer \"" + *value + "\"");
            } else if (profile && !profile->admits(*layer)) {
              errors.add(path + ".layer", ValidationCode::UnknownLayer,
                         "layer " + *value + " is not admitted by the " +
                             std::string(architecture_name(profile->kind())) +
                             " architecture");
              layer = std::nullopt;
            }
          }
        }

        std::optional<double> probability;
        if (const json* f = require_field(entry, "probability", path + ".probability", errors)) {
          if (auto value = read_number(*f, path + ".probability", errors)) {
            if (!(std::isfinite(*value) && *value >= 0.0 && *value <= 1.0)) {
              errors.add(path + ".probability", ValidationCode::OutOfRange,
                         "must lie within [0, 1]");
            } else {
              probability = *value;
            }
          }
        }

        ParsedLoss loss;
        if (const json* f = require_field(entry, "loss", path + ".loss", errors)) {
          loss = read_loss(*f, path + ".loss", errors);
        }

        if (id && display_name && layer && probability && loss.model) {
          scenarios.emplace_back(*id, *display_name, *layer, Probability(*probability),
                                 *loss.model);
        }
      }
    }
  }

  std::vector<ControlOption> controls;
  if (auto it = doc.find("controls"); it != doc.end()) {
    if (!it->is_array()) {
      errors.add("controls", ValidationCode::BadSchema, "must be an array");
    } else {
      std::set<std::string> control_ids;
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& entry = (*it)[i];
        const std::string path = "controls[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
          errors.add(path, ValidationCode::BadSchema, "must be an object");
          continue;
        }
        check_unknown_keys(entry, path,
                           {"id", "cost", "applies_to", "probability_multiplier"},
                           errors);

        std::optional<std::string> id;
        if (const json* f = require_field(entry, "id", path + ".id", errors)) {
          if (auto value = read_string(*f, path + ".id", errors)) {
            if (value->empty()) {
              errors.add(path + ".id", ValidationCode::BadSchema, "must be non-empty");
            } else if (!control_ids.insert(*value).second) {
              errors.add(path + ".id", ValidationCode::DuplicateId,
                         "duplicate control id \"" + *value + "\"");
            } else {
              id = *value;
            }
          }
        }

        std::optional<double> cost;
        if (const json* f = require_field(entry, "cost", path + ".cost", errors)) {
          cost = read_money(*f, path + ".cost", errors);
        }

        std::optional<double> multiplier;
        if (const json* f = require_field(entry, "probability_multiplier",
                                          path + ".probability_multiplier", errors)) {
          if (auto value = read_number(*f, path + ".probability_multiplier", errors)) {
            if (!(std::isfinite(*value) && *value >= 0.0 && *value <= 1.0)) {
              errors.add(path + ".probability_multiplier", ValidationCode::OutOfRange,
                         "must lie within [0, 1]");
            } else {
              multiplier = *value;
            }
          }
        }

        std::optional<std::vector<std::string>> applies_to;
        if (const json* f = require_field(entry, "applies_to", path + ".applies_to", errors)) {
          if (!f->is_array()) {
            errors.add(path + ".applies_to", ValidationCode::BadSchema, "must be an array");
          } else if (f->empty()) {
            errors.add(path + ".applies_to", ValidationCode::BadSchema,
                       "must list at least one scenario");
          } else {
            std::vector<std::string> refs;
            std::set<std::string> seen;
            bool ok = true;
            for (std::size_t j = 0; j < f->size(); ++j) {
              const std::string ref_path = path + ".applies_to[" + std::to_string(j) + "]";
              auto ref = read_string((*f)[j], ref_path, errors);
              if (!ref) {
                ok = false;
                continue;
              }
              if (!seen.insert(*ref).second) {
                errors.add(ref_path, ValidationCode::DuplicateId,
                           "scenario \"" + *ref + "\" listed twice");
                ok = false;
                continue;
              }
              if (scenario_ids.find(*ref) == scenario_ids.end()) {
                errors.add(ref_path, ValidationCode::DanglingReference,
                           "unknown scenario \"" + *ref + "\"");
                ok = false;
                continue;
              }
              refs.push_back(*ref);
            }
            if (ok) applies_to = std::move(refs);
          }
        }

        if (id && cost && multiplier && applies_to) {
          controls.emplace_back(*id, *cost, std::move(*applies_to), *multiplier);
        }
      }
    }
  }

  SimulationDefaults defaults;
  if (auto it = doc.find("simulation"); it != doc.end()) {
    if (!it->is_object()) {
      errors.add("simulation", ValidationCode::BadSchema, "must be an object");
    } else {
      check_unknown_keys(*it, "simulation", {"n_samples", "seed", "confidence_levels"},
                         errors);
      if (auto f = it->find("n_samples"); f != it->end()) {
        if (!f->is_number_integer()) {
          errors.add("simulation.n_samples", ValidationCode::MalformedNumber,
                     "must be an integer");
        } else if (!f->is_number_unsigned() && f->get<std::int64_t>() <= 0) {
          errors.add("simulation.n_samples", ValidationCode::OutOfRange,
                     "must be at least 1");
        } else if (f->get<std::uint64_t>() == 0) {
          errors.add("simulation.n_samples", ValidationCode::OutOfRange,
                     "must be at least 1");
        } else {
          defaults.n_samples = static_cast<std::size_t>(f->get<std::uint64_t>());
        }
      }
      if (auto f = it->find("seed"); f != it->end()) {
        if (!f->is_number_integer()) {
          errors.add("simulation.seed", ValidationCode::MalformedNumber,
                     "must be an integer");
        } else if (!f->is_number_unsigned() && f->get<std::int64_t>() < 0) {
          errors.add("simulation.seed", ValidationCode::OutOfRange,
                     "must be non-negative");
        } else {
          defaults.seed = f->get<std::uint64_t>();
        }
      }
      if (auto f = it->find("confidence_levels"); f != it->end()) {
        if (!f->is_array()) {
          errors.add("simulation.confidence_levels", ValidationCode::BadSchema,
                     "must be an array");
        } else if (f->empty()) {
          errors.add("simulation.confidence_levels", ValidationCode::BadSchema,
                     "must be non-empty");
        } else {
          std::vector<double> levels;
          bool ok = true;
          for (std::size_t j = 0; j < f->size(); ++j) {
            const std::string level_path =
                "simulation.confidence_levels[" + std::to_string(j) + "]";
            auto value = read_number((*f)[j], level_path, errors);
            if (!value) {
              ok = false;
              continue;
            }
            if (!(std::isfinite(*value) && *value > 0.0 && *value < 1.0)) {
              errors.add(level_path, ValidationCode::OutOfRange,
                         "must lie strictly inside (0, 1)");
              ok = false;
              continue;
            }
            levels.push_back(*value);
          }
          if (ok) {
            for (std::size_t j = 1; j < levels.size(); ++j) {
              if (!(levels[j - 1] < levels[j])) {
                errors.add_pair(
                    "simulation.confidence_levels[" + std::to_string(j - 1) + "]",
                    "simulation.confidence_levels[" + std::to_string(j) + "]",
                    ValidationCode::OutOfRange, "must be strictly increasing");
                ok = false;
              }
            }
          }
          if (ok) defaults.confidence_levels = std::move(levels);
        }
      }
    }
  }

  if (!errors.empty()) {
    return result;
  }

  result.document = PortfolioDocument{
      schema_version,
      Portfolio(std::move(name), *profile, std::move(scenarios), std::move(currency)),
      std::move(controls),
      std::move(defaults),
  };
  return result;
}

std::string serialize_portfolio(const PortfolioDocument& doc) {
  json out;
  out["schema_version"] = doc.schema_version;
  out["name"] = doc.portfolio.name();
  out["architecture"] = architecture_name(doc.portfolio.profile().kind());
  out["currency"] = doc.portfolio.currency_label();

  json scenarios = json::array();
  for (const Scenario& s : doc.portfolio.scenarios()) {
    json loss;
    switch (s.loss().kind()) {
      case LossModel::Kind::Point:
        loss = {{"kind", "point"}, {"amount", s.loss().amount()}};
        break;
      case LossModel::Kind::Uniform:
        loss = {{"kind", "uniform"}, {"low", s.loss().low()}, {"high", s.loss().high()}};
        break;
      case LossModel::Kind::Triangular:
        loss = {{"kind", "triangular"},
                {"low", s.loss().low()},
                {"mode", s.loss().mode()},
                {"high", s.loss().high()}};
        break;
      case LossModel::Kind::Lognormal:
        loss = {{"kind", "lognormal"},
                {"log_mean", s.loss().log_mean()},
                {"log_stddev", s.loss().log_stddev()}};
        break;
    }
    scenarios.push_back({{"id", s.id()},
                         {"name", s.name()},
                         {"layer", layer_name(s.layer())},
                         {"probability", s.probability().value()},
                         {"loss", loss}});
  }
  out["scenarios"] = std::move(scenarios);

  if (!doc.controls.empty()) {
    json controls = json::array();
    for (const ControlOption& c : doc.controls) {
      controls.push_back({{"id", c.id()},
                          {"cost", c.cost()},
                          {"applies_to", c.applies_to()},
                          {"probability_multiplier", c.probability_multiplier()}});
    }
    out["controls"] = std::move(controls);
  }

  if (doc.simulation.any()) {
    json sim = json::object();
    if (doc.simulation.n_samples) sim["n_samples"] = *doc.simulation.n_samples;
    if (doc.simulation.seed) sim["seed"] = *doc.simulation.seed;
    if (doc.simulation.confidence_levels) {
      sim["confidence_levels"] = *doc.simulation.confidence_levels;
    }
    out["simulation"] = std::move(sim);
  }

  return out.dump(2) + "\n";
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "table") return ReportFormat::Table;
  return std::nullopt;
}

namespace {

[[noreturn]] void unsupported_format() {
  throw std::invalid_argument("unsupported report format");
}

}  // namespace

std::string serialize_report(const CyVarBreakdown& breakdown,
                             const std::string& currency, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      json out;
      out["report"] = "expected_cyvar";
      out["schema_version"] = 1;
      out["currency"] = currency;
      json per_scenario = json::array();
      for (const auto& [id, value] : breakdown.per_scenario) {
        per_scenario.push_back({{"id", id}, {"expected_cyvar", value}});
      }
      out["per_scenario"] = std::move(per_scenario);
      json per_layer = json::array();
      for (const auto& [layer, value] : breakdown.per_layer) {
        per_layer.push_back({{"layer", layer_name(layer)}, {"expected_cyvar", value}});
      }
      out["per_layer"] = std::move(per_layer);
      out["total_expected_cyvar"] = breakdown.total;
      return out.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string out = "record,id,expected_cyvar\n";
      for (const auto& [id, value] : breakdown.per_scenario) {
        out += "scenario," + csv_escape(id) + "," + format_number(value) + "\n";
      }
      for (const auto& [layer, value] : breakdown.per_layer) {
        out += "layer," + std::string(layer_name(layer)) + "," + format_number(value) + "\n";
      }
      out += "total,," + format_number(breakdown.total) + "\n";
      return out;
    }
    case ReportFormat::Table: {
      std::ostringstream os;
      os << "Expected CyVaR (" << currency << ")\n\n";
      os << std::left << std::setw(28) << "scenario" << "expected CyVaR\n";
      for (const auto& [id, value] : breakdown.per_scenario) {
        os << std::left << std::setw(28) << id << format_number(value) << "\n";
      }
      os << "\n" << std::left << std::setw(28) << "layer" << "expected CyVaR\n";
      for (const auto& [layer, value] : breakdown.per_layer) {
        os << std::left << std::setw(28) << layer_name(layer) << format_number(value)
           << "\n";
      }
      os << "\n" << std::left << std::setw(28) << "total" << format_number(breakdown.total)
         << "\n";
      return os.str();
    }
  }
  unsupported_format();
}

std::string serialize_report(const SimulationReport& report,
                             const std::string& currency, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      json out;
      out["report"] = "simulation";
      out["schema_version"] = 1;
      out["currency"] = currency;
      out["n_samples"] = static_cast<std::uint64_t>(report.n_samples);
      out["seed"] = report.seed;
      out["empirical_mean"] = report.empirical_mean;
      json var = json::array();
      for (const auto& [alpha, value] : report.var_by_alpha) {
        var.push_back({{"alpha", alpha}, {"value_at_risk", value}});
      }
      out["value_at_risk"] = std::move(var);
      json layer_var = json::array();
      for (const auto& [layer, rows] : report.layer_var_by_alpha) {
        json entries = json::array();
        for (const auto& [alpha, value] : rows) {
          entries.push_back({{"alpha", alpha}, {"value_at_risk", value}});
        }
        layer_var.push_back(
            {{"layer", layer_name(layer)}, {"value_at_risk", std::move(entries)}});
      }
      out["layer_value_at_risk"] = std::move(layer_var);
      json curve = json::array();
      for (const auto& [threshold, probability] : report.exceedance) {
        curve.push_back(
            {{"threshold", threshold}, {"exceedance_probability", probability}});
      }
      out["exceedance_curve"] = std::move(curve);
      return out.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string out = "record,layer,alpha,threshold,value\n";
      out += "empirical_mean,,,," + format_number(report.empirical_mean) + "\n";
      for (const auto& [alpha, value] : report.var_by_alpha) {
        out += "var,total," + format_number(alpha) + ",," + format_number(value) + "\n";
      }
      for (const auto& [layer, rows] : report.layer_var_by_alpha) {
        for (const auto& [alpha, value] : rows) {
          out += "var," + std::string(layer_name(layer)) + "," + format_number(alpha) +
                 ",," + format_number(value) + "\n";
        }
      }
      for (const auto& [threshold, probability] : report.exceedance) {
        out += "exceedance,,," + format_number(threshold) + "," +
               format_number(probability) + "\n";
      }
      return out;
    }
    case ReportFormat::Table: {
      std::ostringstream os;
      os << "Simulated loss distribution (" << currency << ", " << report.n_samples
         << " samples, seed " << report.seed << ")\n\n";
      os << "empirical mean: " << format_number(report.empirical_mean) << "\n\n";
      os << std::left << std::setw(14) << "alpha" << "VaR\n";
      for (const auto& [alpha, value] : report.var_by_alpha) {
        os << std::left << std::setw(14) << format_number(alpha) << format_number(value)
           << "\n";
      }
      for (const auto& [layer, rows] : report.layer_var_by_alpha) {
        os << "\n" << layer_name(layer) << "\n";
        for (const auto& [alpha, value] : rows) {
          os << std::left << std::setw(14) << format_number(alpha) << format_number(value)
             << "\n";
        }
      }
      os << "\n" << std::left << std::setw(18) << "threshold" << "P(loss > threshold)\n";
      for (const auto& [threshold, probability] : report.exceedance) {
        os << std::left << std::setw(18) << format_number(threshold)
           << format_number(probability) << "\n";
      }
      return os.str();
    }
  }
  unsupported_format();
}

std::string serialize_report(const AllocationPlan& plan, const std::string& currency,
                             ReportFormat format) {
  const char* method = plan.exhaustive ? "exhaustive" : "greedy";
  switch (format) {
    case ReportFormat::Json: {
      json out;
      out["report"] = "allocation";
      out["schema_version"] = 1;
      out["currency"] = currency;
      out["method"] = method;
      out["selected_controls"] = plan.selected;
      out["total_cost"] = plan.total_cost;
      out["baseline_expected_cyvar"] = plan.baseline_cyvar;
      out["residual_expected_cyvar"] = plan.residual_cyvar;
      out["rosi"] = plan.rosi;
      return out.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string out = "record,id,value\n";
      out += std::string("method,,") + method + "\n";
      for (const std::string& id : plan.selected) {
        out += "selected," + csv_escape(id) + ",\n";
      }
      out += "total_cost,," + format_number(plan.total_cost) + "\n";
      out += "baseline_expected_cyvar,," + format_number(plan.baseline_cyvar) + "\n";
      out += "residual_expected_cyvar,," + format_number(plan.residual_cyvar) + "\n";
      out += "rosi,," + format_number(plan.rosi) + "\n";
      return out;
    }
    case ReportFormat::Table: {
      std::ostringstream os;
      os << "Budget allocation (" << currency << ", " << method << ")\n\n";
      os << "selected controls:";
      if (plan.selected.empty()) {
        os << " (none)";
      } else {
        for (const std::string& id : plan.selected) {
          os << " " << id;
        }
      }
      os << "\n";
      os << std::left << std::setw(28) << "total cost" << format_number(plan.total_cost)
         << "\n";
      os << std::left << std::setw(28) << "baseline expected CyVaR"
         << format_number(plan.baseline_cyvar) << "\n";
      os << std::left << std::setw(28) << "residual expected CyVaR"
         << format_number(plan.residual_cyvar) << "\n";
      os << std::left << std::setw(28) << "ROSI" << format_number(plan.rosi) << "\n";
      return os.str();
    }
  }
  unsupported_format();
}

}  // namespace cyvar
