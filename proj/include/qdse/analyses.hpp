#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdse/catalog.hpp"
#include "qdse/explorer.hpp"
#include "qdse/merit.hpp"

namespace qdse {

/// Merit drop when the qubit count steps past a multiple of the core
/// capacity and another core comes online.
struct SawtoothDrop {
  int k = 0;                     ///< capacity multiple, boundary at k*n_q_lim
  std::int64_t n_q_before = 0;   ///< k*n_q_lim
  std::int64_t n_q_after = 0;    ///< k*n_q_lim + 1
  double gamma_before = 0.0;
  double gamma_after = 0.0;
};

/// Merit versus qubit count at a fixed core count.
struct PerformanceCurve {
  int n_cores = 1;
  std::vector<std::int64_t> n_q;
  std::vector<double> gamma;
  std::vector<int> n_used;
};

/// Finds every capacity boundary inside the curve where the merit falls as
/// an additional core activates. The curve must sample both k*n_q_lim and
/// k*n_q_lim + 1 for each boundary in range.
std::vector<SawtoothDrop> sawtooth_report(const PerformanceCurve& curve,
                                          std::int64_t n_q_lim);

/// One core count's slice of a scalability analysis.
struct ScalabilityRow {
  PerformanceCurve curve;
  PeakEntry peak;
  std::vector<SawtoothDrop> drops;
};

/// Merit curves, per-row peaks, and saw-tooth drops over a shared qubit axis.
struct ScalabilityReport {
  Scenario scenario;
  std::vector<std::int64_t> n_q_axis;
  std::vector<ScalabilityRow> rows;
};

/// Sweeps the scenario over the qubit axis for each core count and reports
/// curve, peak, and saw-tooth drops per row.
ScalabilityReport scalability_analysis(const Scenario& scenario,
                                       const std::vector<int>& n_cores_list,
                                       const NQAxisSpec& n_q_axis,
                                       int workers = 1);

/// Technology-gap analysis shape: full curves at a fixed core count, or the
/// per-core-count peak envelope.
struct QtgaMode {
  enum class Kind { FixedCores, PeakPerCores };
  Kind kind = Kind::FixedCores;
  int fixed_cores = 1;  ///< used only by FixedCores
};

/// One sampled design point of a technology-gap curve.
struct QtgaPoint {
  std::int64_t n_q = 0;
  int n_cores = 1;
  double gamma = 0.0;
};

/// One technology at one evolution step.
struct QtgaEntry {
  std::string technology;       ///< base profile name
  double delta = 0.0;
  double fidelity = 0.0;        ///< evolved value in effect
  double quality_factor = 0.0;  ///< evolved value in effect
  std::vector<QtgaPoint> curve;
};

/// Technology-gap analysis over a catalog and a list of evolution steps.
struct QtgaReport {
  QtgaMode mode;
  std::vector<QtgaEntry> entries;  ///< technology-major, delta-minor
};

/// Axes and parallelism for a technology-gap analysis.
struct QtgaOptions {
  NQAxisSpec n_q_axis;
  std::vector<int> n_cores_axis = {1};  ///< used only by PeakPerCores
  int workers = 1;
};

/// Runs the technology-gap analysis: one sweep per catalog entry with the
/// delta list as the evolution axis, reduced per the mode.
QtgaReport qtga(const std::vector<TechnologyProfile>& catalog,
                const std::vector<double>& delta_list, const QtgaMode& mode,
                const Scenario& scenario_base, const QtgaOptions& options);

/// Reference coordinates for an equivalence search, on the grid's axes.
struct EquivalenceRef {
  double delta = 0.0;
  int n_cores = 1;
  std::int64_t n_q = 1;
};

/// One design point with its merit and deviation from the reference merit.
struct EquivalenceEntry {
  std::string technology;
  double delta = 0.0;
  int n_cores = 1;
  std::int64_t n_q = 0;
  double gamma = 0.0;
  double rel_dev = 0.0;  ///< (gamma - gamma_ref) / gamma_ref
};

/// Result of an equivalence search.
struct EquivalenceMatch {
  EquivalenceEntry reference;
  std::vector<EquivalenceEntry> matches;  ///< ascending (n_q, n_cores, delta)
};

/// Finds every feasible cell of grid_b whose merit is within tol_rel of the
/// merit at the reference coordinates in grid_a. The reference must lie
/// exactly on grid_a's axes and be feasible; tol_rel must be in [0, 0.5].
EquivalenceMatch equivalent_design(const ResultGrid& grid_a,
                                   const ResultGrid& grid_b,
                                   const EquivalenceRef& ref, double tol_rel);

}  // namespace qdse
