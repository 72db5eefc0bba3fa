#include "qdse/analyses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qdse/errors.hpp"

namespace qdse {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Index of value in a sorted axis, or npos.
template <typename T>
std::size_t find_on_axis(const std::vector<T>& axis, T value) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), value);
  if (it == axis.end() || *it != value)
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(it - axis.begin());
}

}  // namespace

std::vector<SawtoothDrop> sawtooth_report(const PerformanceCurve& curve,
                                          std::int64_t n_q_lim) {
  if (n_q_lim < 1)
    throw DomainError("n_q_lim must be >= 1, got " + std::to_string(n_q_lim));
  const std::size_t n = curve.n_q.size();
  if (curve.gamma.size() != n || curve.n_used.size() != n)
    throw DomainError("performance curve arrays must have equal length");
  std::vector<SawtoothDrop> drops;
  if (n == 0) return drops;
  const std::int64_t front = curve.n_q.front();
  const std::int64_t back = curve.n_q.back();

  auto sample_at = [&](std::int64_t n_q) {
    const std::size_t i = find_on_axis(curve.n_q, n_q);
    if (i == std::numeric_limits<std::size_t>::max())
      throw DomainError("sawtooth analysis requires a sample at n_q=" +
                        std::to_string(n_q));
    return i;
  };

  for (std::int64_t k = 1; k <= back / n_q_lim + 1; ++k) {
    const std::int64_t boundary = k * n_q_lim;
    if (boundary + 1 > back) break;
    if (boundary < front) continue;
    const std::size_t before = sample_at(boundary);
    const std::size_t after = sample_at(boundary + 1);
    if (curve.gamma[after] < curve.gamma[before] &&
        curve.n_used[after] > curve.n_used[before]) {
      SawtoothDrop d;
      d.k = static_cast<int>(k);
      d.n_q_before = boundary;
      d.n_q_after = boundary + 1;
      d.gamma_before = curve.gamma[before];
      d.gamma_after = curve.gamma[after];
      drops.push_back(d);
    }
  }
  return drops;
}

ScalabilityReport scalability_analysis(const Scenario& scenario,
                                       const std::vector<int>& n_cores_list,
                                       const NQAxisSpec& n_q_axis,
                                       int workers) {
  SweepSpec spec;
  spec.scenario = scenario;
  spec.n_q_axis = n_q_axis;
  spec.n_cores_axis = n_cores_list;
  const ResultGrid grid = sweep(spec, workers);
  const std::vector<PeakEntry> peaks = peak_by_cores(grid);

  ScalabilityReport report;
  report.scenario = scenario;
  report.n_q_axis = grid.n_q_axis;
  for (std::size_t c = 0; c < grid.n_cores_axis.size(); ++c) {
    ScalabilityRow row;
    row.curve.n_cores = grid.n_cores_axis[c];
    for (std::size_t q = 0; q < grid.n_q_axis.size(); ++q) {
      const GridCell& cell = grid.cells[grid.index(0, c, q)];
      if (!cell.feasible) continue;
      row.curve.n_q.push_back(grid.n_q_axis[q]);
      row.curve.gamma.push_back(cell.value.gamma);
      row.curve.n_used.push_back(cell.value.n_used);
    }
    row.peak = peaks[c];
    row.drops = sawtooth_report(row.curve, scenario.n_q_lim);
    report.rows.push_back(std::move(row));
  }
  return report;
}

QtgaReport qtga(const std::vector<TechnologyProfile>& catalog,
                const std::vector<double>& delta_list, const QtgaMode& mode,
                const Scenario& scenario_base, const QtgaOptions& options) {
  if (catalog.empty())
    throw ConfigError("technology-gap analysis requires a non-empty catalog");
  if (mode.kind == QtgaMode::Kind::FixedCores && mode.fixed_cores < 1)
    throw ConfigError("fixed_cores must be >= 1, got " +
                      std::to_string(mode.fixed_cores));

  QtgaReport report;
  report.mode = mode;
  for (const auto& tech : catalog) {
    SweepSpec spec;
    spec.scenario = scenario_base;
    spec.technology = tech;
    spec.delta_axis = delta_list;
    spec.n_q_axis = options.n_q_axis;
    spec.n_cores_axis = mode.kind == QtgaMode::Kind::FixedCores
                            ? std::vector<int>{mode.fixed_cores}
                            : options.n_cores_axis;
    const ResultGrid grid = sweep(spec, options.workers);
    const std::vector<PeakEntry> peaks = peak_by_cores(grid);

    for (std::size_t d = 0; d < grid.delta_axis.size(); ++d) {
      QtgaEntry entry;
      entry.technology = tech.name;
      entry.delta = grid.delta_axis[d];
      entry.fidelity = grid.contexts[d].fidelity;
      entry.quality_factor = grid.contexts[d].quality_factor;
      if (mode.kind == QtgaMode::Kind::FixedCores) {
        for (std::size_t q = 0; q < grid.n_q_axis.size(); ++q) {
          const GridCell& cell = grid.cells[grid.index(d, 0, q)];
          if (!cell.feasible) continue;
          entry.curve.push_back(
              {grid.n_q_axis[q], mode.fixed_cores, cell.value.gamma});
        }
      } else {
        for (const auto& peak : peaks) {
          if (peak.delta_index != d || !peak.found) continue;
          entry.curve.push_back({peak.n_q_star, peak.n_cores, peak.gamma_star});
        }
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

EquivalenceMatch equivalent_design(const ResultGrid& grid_a,
                                   const ResultGrid& grid_b,
                                   const EquivalenceRef& ref, double tol_rel) {
  if (!(tol_rel >= 0.0) || !(tol_rel <= 0.5))
    throw DomainError("equivalence tol_rel must be in [0, 0.5], got " +
                      num(tol_rel));

  const std::size_t d = find_on_axis(grid_a.delta_axis, ref.delta);
  if (d == std::numeric_limits<std::size_t>::max())
    throw DomainError("reference delta " + num(ref.delta) +
                      " is not on the grid's delta axis");
  const std::size_t c = find_on_axis(grid_a.n_cores_axis, ref.n_cores);
  if (c == std::numeric_limits<std::size_t>::max())
    throw DomainError("reference n_cores " + std::to_string(ref.n_cores) +
                      " is not on the grid's n_cores axis");
  const std::size_t q = find_on_axis(grid_a.n_q_axis, ref.n_q);
  if (q == std::numeric_limits<std::size_t>::max())
    throw DomainError("reference n_q " + std::to_string(ref.n_q) +
                      " is not on the grid's n_q axis");

  const GridCell& ref_cell = grid_a.cells[grid_a.index(d, c, q)];
  if (!ref_cell.feasible)
    throw DomainError("reference design point is infeasible");
  const double gamma_ref = ref_cell.value.gamma;

  EquivalenceMatch result;
  result.reference.technology = grid_a.contexts[d].technology;
  result.reference.delta = ref.delta;
  result.reference.n_cores = ref.n_cores;
  result.reference.n_q = ref.n_q;
  result.reference.gamma = gamma_ref;
  result.reference.rel_dev = 0.0;

  for (std::size_t bd = 0; bd < grid_b.delta_axis.size(); ++bd) {
    for (std::size_t bc = 0; bc < grid_b.n_cores_axis.size(); ++bc) {
      for (std::size_t bq = 0; bq < grid_b.n_q_axis.size(); ++bq) {
        const GridCell& cell = grid_b.cells[grid_b.index(bd, bc, bq)];
        if (!cell.feasible) continue;
        const double g = cell.value.gamma;
        if (!(std::fabs(g - gamma_ref) <= tol_rel * gamma_ref)) continue;
        EquivalenceEntry e;
        e.technology = grid_b.contexts[bd].technology;
        e.delta = grid_b.delta_axis[bd];
        e.n_cores = grid_b.n_cores_axis[bc];
        e.n_q = grid_b.n_q_axis[bq];
        e.gamma = g;
        e.rel_dev = (g - gamma_ref) / gamma_ref;
        result.matches.push_back(std::move(e));
      }
    }
  }
  std::sort(result.matches.begin(), result.matches.end(),
            [](const EquivalenceEntry& a, const EquivalenceEntry& b) {
              if (a.n_q != b.n_q) return a.n_q < b.n_q;
              if (a.n_cores != b.n_cores) return a.n_cores < b.n_cores;
              return a.delta < b.delta;
            });
  return result;
}

}  // namespace qdse
