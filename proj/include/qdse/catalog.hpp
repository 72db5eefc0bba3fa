#pragma once

#include <string>
#include <vector>

namespace qdse {

/// Measured figures for one hardware technology.
struct TechnologyProfile {
  std::string name;
  double tau_c_s = 0.0;         ///< coherence time, seconds, > 0
  double gate_latency_s = 0.0;  ///< two-qubit gate latency, seconds, > 0
  double fidelity = 0.0;        ///< two-qubit gate fidelity, in (0, 1]
  double quality_factor = 0.0;  ///< tau_c_s / gate_latency_s when derived, > 0
};

/// Throws DomainError naming the first field outside its range.
void validate(const TechnologyProfile& p);

/// tau_c_s / gate_latency_s. Throws DomainError naming whichever input is
/// not finite and positive.
double quality_factor(double tau_c_s, double gate_latency_s);

/// Rules for improving fidelity under a technology-evolution factor.
enum class FidelityModel {
  /// Infidelity shrinks by the evolution factor: F' = 1 - (1 - F)/(1 + delta).
  ReciprocalInfidelity,
};

/// One technology-evolution step. The quality factor scales by (1 + delta);
/// fidelity improves under the selected model.
struct EvolutionDelta {
  double delta = 0.0;  ///< >= 0; zero is the identity
  FidelityModel fidelity_model = FidelityModel::ReciprocalInfidelity;
};

/// Applies an evolution step. delta = 0 returns the profile unchanged;
/// otherwise the result keeps the baseline timings, carries the evolved
/// fidelity and quality factor, and is renamed "<name>@delta=<value>".
TechnologyProfile evolve(const TechnologyProfile& p, const EvolutionDelta& evo);

/// Parses a catalog document:
///   {"technologies": [{"name", "tau_c_s", "gate_latency_s", "fidelity",
///                      "quality_factor"?}, ...]}
/// quality_factor is derived from the timings when absent and must agree
/// with them to 1e-9 relative when present. Duplicate names, missing or
/// mistyped fields, and out-of-range values are rejected with the entry
/// and field named. Throws ConfigError.
std::vector<TechnologyProfile> load_catalog(const std::string& json_text);

/// Serializes a catalog; load_catalog(save_catalog(x)) == x field for field.
std::string save_catalog(const std::vector<TechnologyProfile>& profiles);

}  // namespace qdse
