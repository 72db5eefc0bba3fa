#include "qdse/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdse/errors.hpp"

namespace qdse {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string delta_tag(double delta) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", delta);
  return buf;
}

}  // namespace

void validate(const TechnologyProfile& p) {
  if (p.name.empty()) throw DomainError("technology name must be non-empty");
  if (!(p.tau_c_s > 0.0) || !std::isfinite(p.tau_c_s))
    throw DomainError("technology '" + p.name +
                      "': tau_c_s must be finite and > 0, got " +
                      num(p.tau_c_s));
  if (!(p.gate_latency_s > 0.0) || !std::isfinite(p.gate_latency_s))
    throw DomainError("technology '" + p.name +
                      "': gate_latency_s must be finite and > 0, got " +
                      num(p.gate_latency_s));
  if (!(p.fidelity > 0.0) || !(p.fidelity <= 1.0))
    throw DomainError("technology '" + p.name +
                      "': fidelity must be in (0, 1], got " + num(p.fidelity));
  if (!(p.quality_factor > 0.0) || !std::isfinite(p.quality_factor))
    throw DomainError("technology '" + p.name +
                      "': quality_factor must be finite and > 0, got " +
                      num(p.quality_factor));
}

double quality_factor(double tau_c_s, double gate_latency_s) {
  if (!(tau_c_s > 0.0) || !std::isfinite(tau_c_s))
    throw DomainError("tau_c_s must be finite and > 0, got " + num(tau_c_s));
  if (!(gate_latency_s > 0.0) || !std::isfinite(gate_latency_s))
    throw DomainError("gate_latency_s must be finite and > 0, got " +
                      num(gate_latency_s));
  return tau_c_s / gate_latency_s;
}

TechnologyProfile evolve(const TechnologyProfile& p,
                         const EvolutionDelta& evo) {
  validate(p);
  if (!(evo.delta >= 0.0) || !std::isfinite(evo.delta))
    throw DomainError("evolution delta must be finite and >= 0, got " +
                      num(evo.delta));
  if (evo.delta == 0.0) return p;

  TechnologyProfile out = p;
  out.name = p.name + "@delta=" + delta_tag(evo.delta);
  out.quality_factor = p.quality_factor * (1.0 + evo.delta);
  switch (evo.fidelity_model) {
    case FidelityModel::ReciprocalInfidelity:
      out.fidelity = 1.0 - (1.0 - p.fidelity) / (1.0 + evo.delta);
      break;
  }
  return out;
}

std::vector<TechnologyProfile> load_catalog(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("catalog: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("technologies") ||
      !doc["technologies"].is_array())
    throw ConfigError(
        "catalog: expected an object with a \"technologies\" array");

  std::vector<TechnologyProfile> profiles;
  std::set<std::string> seen;
  std::size_t idx = 0;
  for (const auto& entry : doc["technologies"]) {
    const std::string where = "catalog technologies[" + std::to_string(idx) +
                              "]";
    ++idx;
    if (!entry.is_object()) throw ConfigError(where + ": expected an object");

    auto require_number = [&](const char* field) {
      if (!entry.contains(field))
        throw ConfigError(where + ": missing field '" + field + "'");
      if (!entry[field].is_number())
        throw ConfigError(where + ": field '" + field + "' must be a number");
      return entry[field].get<double>();
    };

    TechnologyProfile p;
    if (!entry.contains("name") || !entry["name"].is_string())
      throw ConfigError(where + ": missing or non-string field 'name'");
    p.name = entry["name"].get<std::string>();
    p.tau_c_s = require_number("tau_c_s");
    p.gate_latency_s = require_number("gate_latency_s");
    p.fidelity = require_number("fidelity");

    const std::string who = where + " '" + p.name + "'";
    double derived;
    try {
      derived = quality_factor(p.tau_c_s, p.gate_latency_s);
    } catch (const DomainError& e) {
      throw ConfigError(who + ": " + e.what());
    }
    if (entry.contains("quality_factor")) {
      if (!entry["quality_factor"].is_number())
        throw ConfigError(who + ": field 'quality_factor' must be a number");
      p.quality_factor = entry["quality_factor"].get<double>();
      if (std::fabs(p.quality_factor - derived) > 1e-9 * std::fabs(derived))
        throw ConfigError(
            who + ": quality_factor " + num(p.quality_factor) +
            " disagrees with tau_c_s/gate_latency_s = " + num(derived) +
            " beyond 1e-9 relative");
    } else {
      p.quality_factor = derived;
    }

    try {
      validate(p);
    } catch (const DomainError& e) {
      throw ConfigError(where + ": " + e.what());
    }
    if (!seen.insert(p.name).second)
      throw ConfigError(who + ": duplicate technology name");
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::string save_catalog(const std::vector<TechnologyProfile>& profiles) {
  nlohmann::ordered_json doc;
  doc["technologies"] = nlohmann::ordered_json::array();
  for (const auto& p : profiles) {
    validate(p);
    nlohmann::ordered_json entry;
    entry["name"] = p.name;
    entry["tau_c_s"] = p.tau_c_s;
    entry["gate_latency_s"] = p.gate_latency_s;
    entry["fidelity"] = p.fidelity;
    entry["quality_factor"] = p.quality_factor;
    doc["technologies"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace qdse
