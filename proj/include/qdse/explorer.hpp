#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdse/catalog.hpp"
#include "qdse/merit.hpp"

namespace qdse {

/// Geometric progression from min to max inclusive; endpoints are exact.
std::vector<double> log_range(double min, double max, int points);

/// Logarithmic axis request: points samples spanning [min, max].
struct LogAxisSpec {
  double min = 1.0;
  double max = 1.0;
  int points = 1;
};

/// Qubit-count axis: either an explicit list or a log-spaced request.
using NQAxisSpec = std::variant<std::vector<std::int64_t>, LogAxisSpec>;

/// Materializes a qubit axis: explicit lists are taken verbatim; log
/// requests are rounded to integers, deduplicated, and augmented with the
/// points k*n_q_lim-1, k*n_q_lim, k*n_q_lim+1 that fall inside the range so
/// capacity boundaries are sampled regardless of resolution.
std::vector<std::int64_t> build_n_q_axis(const NQAxisSpec& spec,
                                         std::int64_t n_q_lim);

/// Left-hand side of a design constraint.
enum class ConstraintExpr {
  MaxTotalQubits,      ///< n_q - bound
  MinTotalQubits,      ///< bound - n_q
  MaxCores,            ///< n_cores - bound
  MinCores,            ///< bound - n_cores
  WithinCoreCapacity,  ///< n_q - n_q_lim * n_cores - bound
};

/// Comparison applied to the constraint value.
enum class ConstraintKind {
  Inequality,  ///< value <= 0 is feasible (boundary included)
  Equality,    ///< value == 0 is feasible
};

/// One feasibility constraint on a design point.
struct Constraint {
  ConstraintExpr expr = ConstraintExpr::MaxTotalQubits;
  ConstraintKind kind = ConstraintKind::Inequality;
  double bound = 0.0;
};

/// Maps a snake_case constraint name to its expression; throws ConfigError.
ConstraintExpr constraint_expr_from_name(const std::string& name);

/// Inverse of constraint_expr_from_name.
std::string to_string(ConstraintExpr expr);

/// Signed constraint value; feasibility follows the constraint kind.
double constraint_value(const Constraint& c, const Scenario& s,
                        const DesignPoint& p);

/// True when the point satisfies every constraint.
bool feasible(const Scenario& s, const DesignPoint& p,
              const std::vector<Constraint>& constraints);

/// Full sweep request: scenario template, optional technology whose
/// fidelity and quality factor seed the scenario, and the three axes.
struct SweepSpec {
  Scenario scenario;
  std::optional<TechnologyProfile> technology;
  std::vector<double> delta_axis = {0.0};
  NQAxisSpec n_q_axis;
  std::vector<int> n_cores_axis = {1};
  std::vector<Constraint> constraints;
  FidelityModel fidelity_model = FidelityModel::ReciprocalInfidelity;
};

/// Scenario inputs in effect for one slice of the delta axis.
struct DeltaContext {
  double delta = 0.0;
  std::string technology;  ///< source profile name, "scenario" when direct
  double fidelity = 0.0;
  double quality_factor = 0.0;
};

/// One evaluated grid point.
struct GridCell {
  MeritBreakdown value;
  bool feasible = true;
};

/// Dense result grid addressed by (delta, n_cores, n_q) axis indices.
struct ResultGrid {
  std::vector<double> delta_axis;
  std::vector<int> n_cores_axis;
  std::vector<std::int64_t> n_q_axis;
  std::vector<DeltaContext> contexts;  ///< one per delta axis entry
  std::vector<GridCell> cells;         ///< delta-major, then cores, then n_q
  Scenario scenario;                   ///< template, pre technology overlay

  /// Flat cell index for (delta, cores, qubit) axis positions.
  std::size_t index(std::size_t d, std::size_t c, std::size_t q) const {
    return (d * n_cores_axis.size() + c) * n_q_axis.size() + q;
  }

  /// Scenario with the delta slice's fidelity and quality factor applied.
  Scenario scenario_for(std::size_t d) const;
};

/// Evaluates the whole grid; workers <= 0 selects hardware concurrency.
/// Output is identical for any worker count.
ResultGrid sweep(const SweepSpec& spec, int workers = 1);

/// Highest-merit qubit count along one (delta, n_cores) row.
struct PeakEntry {
  std::size_t delta_index = 0;
  double delta = 0.0;
  int n_cores = 1;
  std::int64_t n_q_star = 0;
  double gamma_star = 0.0;
  bool found = false;  ///< false when the whole row is infeasible
};

/// Peak per (delta, n_cores) row, delta-major; ties go to the smaller n_q.
std::vector<PeakEntry> peak_by_cores(const ResultGrid& grid);

/// One vertex of an isoline in the (n_q, n_cores) plane.
struct IsolinePoint {
  std::size_t delta_index = 0;
  int n_cores = 1;
  double n_q = 0.0;
  double gamma = 0.0;
};

/// Connected chain of isoline vertices across consecutive core counts.
struct IsolinePolyline {
  std::vector<IsolinePoint> points;
};

/// All polylines tracing one merit level.
struct IsolineLevel {
  double level = 0.0;
  std::vector<IsolinePolyline> polylines;
};

/// Isoline extraction result over a grid.
struct IsolineSet {
  std::vector<IsolineLevel> levels;
};

/// Abscissas where a sampled curve crosses the level, by log-log
/// interpolation between neighbours; each segment is half-open so a shared
/// sample is reported once. Inputs must be positive and n_q increasing.
std::vector<double> level_crossings(const std::vector<double>& n_q,
                                    const std::vector<double>& gamma,
                                    double level);

/// Traces merit isolines on the grid. Each candidate crossing is refined
/// against the continuous merit function until the re-evaluated merit is
/// within tol_rel of the level; crossings that cannot reach the tolerance
/// (level inside a core-count discontinuity) are dropped.
IsolineSet isolines(const ResultGrid& grid, const std::vector<double>& levels,
                    double tol_rel);

}  // namespace qdse
