#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdse/analyses.hpp"
#include "qdse/catalog.hpp"
#include "qdse/explorer.hpp"
#include "qdse/merit.hpp"

namespace qdse {

/// Run metadata attached to every JSON result document.
struct Provenance {
  std::string tool;
  std::string version;
  std::string config_hash;   ///< hash of the raw config file bytes
  std::string catalog_hash;  ///< hash of the raw catalog bytes, "" when none
  std::string timestamp;     ///< ISO 8601 UTC
  int precision = 9;         ///< significant digits for emitted doubles
};

/// Serialization target.
enum class OutputFormat { Csv, Json };

/// Maps "csv" or "json" to the format; throws ConfigError otherwise.
OutputFormat output_format_from_name(const std::string& name);

/// Inverse of output_format_from_name.
std::string to_string(OutputFormat format);

/// One record field: empty, text, integer, or real.
using Field = std::variant<std::monostate, std::string, std::int64_t, double>;

/// Tabular result with a named schema and provenance.
struct ResultDocument {
  Provenance provenance;
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Field>> records;
};

/// Feasible grid cells as a "grid" document, delta-major row order.
ResultDocument document_for(const ResultGrid& grid);

/// Per-row merit peaks as a "peaks" document; infeasible rows are omitted.
ResultDocument document_for(const std::vector<PeakEntry>& peaks,
                            const ResultGrid& grid);

/// Isoline polylines as an "isolines" document; polyline ids restart at
/// zero within each level.
ResultDocument document_for(const IsolineSet& set, const ResultGrid& grid);

/// Curves, peaks, and saw-tooth drops as a "scalability" document.
ResultDocument document_for(const ScalabilityReport& report);

/// Technology-gap curves as a "qtga" document.
ResultDocument document_for(const QtgaReport& report);

/// Reference row plus matches as an "equiv" document.
ResultDocument document_for(const EquivalenceMatch& match);

/// Serializes the document. CSV carries the header and data rows only;
/// JSON adds provenance and is stable under parse_result_document.
std::string emit(const ResultDocument& doc, OutputFormat format);

/// Parses a JSON document produced by emit; re-emitting the result
/// reproduces the input bytes.
ResultDocument parse_result_document(const std::string& json_text);

/// Shortest %g rendering of v at the given significant-digit count.
std::string format_double(double v, int precision);

/// Nearest double to format_double's rendering of v.
double quantize(double v, int precision);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view data);

/// "fnv1a64:<16 hex digits>" tag of the data.
std::string hash_tag(std::string_view data);

/// Current time as ISO 8601 UTC, second resolution.
std::string utc_timestamp();

/// Whole file contents; throws ConfigError when unreadable.
std::string read_file(const std::string& path);

/// Writes data to path; throws IoError when unwritable.
void write_file(const std::string& path, const std::string& data);

/// Provenance for a run over the given raw input bytes.
Provenance make_provenance(const std::string& config_text,
                           const std::string& catalog_text, int precision);

/// Scenario parameters as configured; fidelity and quality factor may be
/// given directly, via timings, or left to a technology profile.
struct ScenarioConfig {
  std::optional<double> fidelity;
  std::optional<double> quality_factor;
  std::optional<double> tau_c_s;
  std::optional<double> gate_latency_s;
  double eps_i = 0.0;
  double eps_c = 0.0;
  std::int64_t n_q_lim = 1;
  MeritWeights weights;
  std::optional<std::int64_t> n_q_norm;  ///< default: qubit axis maximum
  NormMode norm_mode = NormMode::Linear;
};

/// Sweep axes and constraints as configured.
struct SweepConfig {
  std::optional<std::string> technology;
  std::vector<double> delta_axis = {0.0};
  NQAxisSpec n_q_axis = LogAxisSpec{10.0, 1e6, 600};
  std::vector<int> n_cores_axis = {1};
  std::vector<Constraint> constraints;
};

/// Equivalence search request between two evolution steps.
struct EquivSpec {
  double delta_a = 0.0;
  double delta_b = 0.0;
  int n_cores = 1;
  std::int64_t n_q = 1;
  double tol_rel = 0.01;
};

/// Analysis-specific options.
struct AnalysisConfig {
  std::vector<double> isoline_levels;
  double isoline_tol_rel = 0.01;
  QtgaMode qtga_mode;
  std::vector<double> delta_list = {0.0, 0.5, 1.0, 1.5};
  std::vector<std::string> technologies;  ///< catalog filter, empty = all
  std::optional<DesignPoint> point;
  std::optional<EquivSpec> equivalence;
};

/// Output destination and formatting.
struct OutputConfig {
  OutputFormat format = OutputFormat::Csv;
  int precision = 9;
  std::optional<std::string> path;  ///< default: stdout
};

/// Full run configuration.
struct RunConfig {
  std::optional<std::string> catalog_path;
  ScenarioConfig scenario;
  SweepConfig sweep;
  AnalysisConfig analysis;
  OutputConfig output;
};

/// Parses a run configuration; unknown keys are ignored, wrong types and
/// out-of-range values raise ConfigError naming the field path.
RunConfig parse_config(const std::string& json_text);

/// True when the scenario config supplies fidelity or quality factor input.
bool scenario_sets_source(const ScenarioConfig& sc);

/// Scenario with shared parameters applied and placeholder fidelity and
/// quality factor, for sweeps that overlay a technology.
Scenario scenario_skeleton(const ScenarioConfig& sc,
                           std::int64_t n_q_norm_default);

/// Scenario with fidelity and quality factor resolved from exactly one
/// source: the config's own fields, or the technology when given.
Scenario resolve_scenario(const ScenarioConfig& sc,
                          const TechnologyProfile* tech,
                          std::int64_t n_q_norm_default);

}  // namespace qdse
