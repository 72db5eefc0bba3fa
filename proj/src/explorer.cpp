#include "qdse/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "qdse/errors.hpp"

namespace qdse {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> log_range(double min, double max, int points) {
  if (!(min > 0.0) || !std::isfinite(min))
    throw DomainError("log range min must be finite and > 0, got " + num(min));
  if (!(max >= min) || !std::isfinite(max))
    throw DomainError("log range max must be >= min, got " + num(max));
  if (points < 1)
    throw DomainError("log range needs at least 1 point, got " +
                      std::to_string(points));
  if (points == 1) {
    if (max != min)
      throw DomainError("log range with a single point requires min == max");
    return {min};
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  const double lmin = std::log(min);
  const double lmax = std::log(max);
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] =
        std::exp(lmin + (lmax - lmin) * i / (points - 1));
  out.front() = min;
  out.back() = max;
  return out;
}

std::vector<std::int64_t> build_n_q_axis(const NQAxisSpec& spec,
                                         std::int64_t n_q_lim) {
  if (n_q_lim < 1)
    throw DomainError("n_q_lim must be >= 1, got " + std::to_string(n_q_lim));

  if (std::holds_alternative<std::vector<std::int64_t>>(spec)) {
    const auto& xs = std::get<std::vector<std::int64_t>>(spec);
    if (xs.empty()) throw DomainError("qubit axis must be non-empty");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 1)
        throw DomainError("qubit axis values must be >= 1, got " +
                          std::to_string(xs[i]));
      if (i > 0 && xs[i] <= xs[i - 1])
        throw DomainError("qubit axis must be strictly increasing at index " +
                          std::to_string(i));
    }
    return xs;
  }

  const auto& ls = std::get<LogAxisSpec>(spec);
  if (!(ls.min >= 1.0) || !std::isfinite(ls.min))
    throw DomainError("qubit axis min must be >= 1, got " + num(ls.min));
  if (!(ls.max >= ls.min) || !std::isfinite(ls.max))
    throw DomainError("qubit axis max must be >= min, got " + num(ls.max));
  if (ls.points < 1)
    throw DomainError("qubit axis needs at least 1 point, got " +
                      std::to_string(ls.points));

  std::set<std::int64_t> pts;
  for (double x : log_range(ls.min, ls.max, ls.points)) {
    const std::int64_t r = std::llround(x);
    pts.insert(r < 1 ? 1 : r);
  }
  const std::int64_t lo = *pts.begin();
  const std::int64_t hi = *pts.rbegin();
  for (std::int64_t k = 1; k <= hi / n_q_lim + 1; ++k) {
    const std::int64_t cap = k * n_q_lim;
    if (cap - 1 > hi) break;
    for (std::int64_t cand : {cap - 1, cap, cap + 1})
      if (cand >= lo && cand <= hi) pts.insert(cand);
  }
  return {pts.begin(), pts.end()};
}

ConstraintExpr constraint_expr_from_name(const std::string& name) {
  if (name == "max_total_qubits") return ConstraintExpr::MaxTotalQubits;
  if (name == "min_total_qubits") return ConstraintExpr::MinTotalQubits;
  if (name == "max_cores") return ConstraintExpr::MaxCores;
  if (name == "min_cores") return ConstraintExpr::MinCores;
  if (name == "within_core_capacity") return ConstraintExpr::WithinCoreCapacity;
  throw ConfigError("unknown constraint '" + name + "'");
}

std::string to_string(ConstraintExpr expr) {
  switch (expr) {
    case ConstraintExpr::MaxTotalQubits: return "max_total_qubits";
    case ConstraintExpr::MinTotalQubits: return "min_total_qubits";
    case ConstraintExpr::MaxCores: return "max_cores";
    case ConstraintExpr::MinCores: return "min_cores";
    case ConstraintExpr::WithinCoreCapacity: return "within_core_capacity";
  }
  throw DomainError("unknown constraint expression");
}

double constraint_value(const Constraint& c, const Scenario& s,
                        const DesignPoint& p) {
  const double n_q = static_cast<double>(p.n_q);
  const double cores = static_cast<double>(p.n_cores);
  switch (c.expr) {
    case ConstraintExpr::MaxTotalQubits: return n_q - c.bound;
    case ConstraintExpr::MinTotalQubits: return c.bound - n_q;
    case ConstraintExpr::MaxCores: return cores - c.bound;
    case ConstraintExpr::MinCores: return c.bound - cores;
    case ConstraintExpr::WithinCoreCapacity:
      return n_q - static_cast<double>(s.n_q_lim) * cores - c.bound;
  }
  throw DomainError("unknown constraint expression");
}

bool feasible(const Scenario& s, const DesignPoint& p,
              const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints) {
    const double v = constraint_value(c, s, p);
    const bool ok =
        c.kind == ConstraintKind::Inequality ? v <= 0.0 : v == 0.0;
    if (!ok) return false;
  }
  return true;
}

Scenario ResultGrid::scenario_for(std::size_t d) const {
  Scenario s = scenario;
  s.fidelity = contexts.at(d).fidelity;
  s.quality_factor = contexts.at(d).quality_factor;
  return s;
}

ResultGrid sweep(const SweepSpec& spec, int workers) {
  const auto& deltas = spec.delta_axis;
  if (deltas.empty()) throw ConfigError("sweep: delta axis must be non-empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= 0.0) || !std::isfinite(deltas[i]))
      throw ConfigError("sweep: delta values must be finite and >= 0, got " +
                        num(deltas[i]));
    if (i > 0 && deltas[i] <= deltas[i - 1])
      throw ConfigError("sweep: delta axis must be strictly increasing");
  }
  if (!spec.technology && !(deltas.size() == 1 && deltas[0] == 0.0))
    throw ConfigError("sweep: delta sweep requires a technology");

  const auto& cores = spec.n_cores_axis;
  if (cores.empty())
    throw ConfigError("sweep: n_cores axis must be non-empty");
  for (std::size_t i = 0; i < cores.size(); ++i) {
    if (cores[i] < 1)
      throw ConfigError("sweep: n_cores values must be >= 1, got " +
                        std::to_string(cores[i]));
    if (i > 0 && cores[i] <= cores[i - 1])
      throw ConfigError("sweep: n_cores axis must be strictly increasing");
  }

  ResultGrid grid;
  grid.delta_axis = deltas;
  grid.n_cores_axis = cores;
  grid.n_q_axis = build_n_q_axis(spec.n_q_axis, spec.scenario.n_q_lim);
  grid.scenario = spec.scenario;

  for (double delta : deltas) {
    DeltaContext ctx;
    ctx.delta = delta;
    if (spec.technology) {
      const TechnologyProfile evolved =
          evolve(*spec.technology, {delta, spec.fidelity_model});
      ctx.technology = spec.technology->name;
      ctx.fidelity = evolved.fidelity;
      ctx.quality_factor = evolved.quality_factor;
    } else {
      ctx.technology = "scenario";
      ctx.fidelity = spec.scenario.fidelity;
      ctx.quality_factor = spec.scenario.quality_factor;
    }
    grid.contexts.push_back(ctx);
  }

  const std::size_t ndelta = grid.delta_axis.size();
  const std::size_t ncores = grid.n_cores_axis.size();
  const std::size_t nq = grid.n_q_axis.size();

  std::vector<Scenario> slices(ndelta);
  for (std::size_t d = 0; d < ndelta; ++d) {
    slices[d] = grid.scenario_for(d);
    validate(slices[d]);
  }

  grid.cells.assign(ndelta * ncores * nq, GridCell{});
  const std::size_t total = grid.cells.size();

  int nworkers = workers;
  if (nworkers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    nworkers = hc == 0 ? 1 : static_cast<int>(hc);
  }
  if (static_cast<std::size_t>(nworkers) > total)
    nworkers = static_cast<int>(total);
  if (nworkers < 1) nworkers = 1;

  struct WorkerError {
    std::size_t index;
    std::exception_ptr ep;
  };
  std::vector<std::optional<WorkerError>> errors(
      static_cast<std::size_t>(nworkers));

  auto run_chunk = [&](int wi, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t q = i % nq;
      const std::size_t c = (i / nq) % ncores;
      const std::size_t d = i / (nq * ncores);
      const DesignPoint pt{grid.n_q_axis[q], grid.n_cores_axis[c]};
      GridCell& cell = grid.cells[i];
      try {
        cell.feasible = feasible(slices[d], pt, spec.constraints);
        if (cell.feasible) cell.value = gamma(slices[d], pt);
      } catch (...) {
        errors[static_cast<std::size_t>(wi)] =
            WorkerError{i, std::current_exception()};
        return;
      }
    }
  };

  if (nworkers == 1) {
    run_chunk(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int wi = 0; wi < nworkers; ++wi) {
      const std::size_t begin =
          total * static_cast<std::size_t>(wi) /
          static_cast<std::size_t>(nworkers);
      const std::size_t end =
          total * static_cast<std::size_t>(wi + 1) /
          static_cast<std::size_t>(nworkers);
      pool.emplace_back(run_chunk, wi, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const WorkerError* first = nullptr;
  for (const auto& e : errors)
    if (e && (!first || e->index < first->index)) first = &*e;
  if (first) {
    const std::size_t q = first->index % nq;
    const std::size_t c = (first->index / nq) % ncores;
    const std::size_t d = first->index / (nq * ncores);
    std::string what = "unknown error";
    try {
      std::rethrow_exception(first->ep);
    } catch (const std::exception& e) {
      what = e.what();
    }
    throw DomainError("cell (delta=" + num(grid.delta_axis[d]) +
                      ", n_cores=" + std::to_string(grid.n_cores_axis[c]) +
                      ", n_q=" + std::to_string(grid.n_q_axis[q]) +
                      "): " + what);
  }
  return grid;
}

std::vector<PeakEntry> peak_by_cores(const ResultGrid& grid) {
  std::vector<PeakEntry> out;
  for (std::size_t d = 0; d < grid.delta_axis.size(); ++d) {
    for (std::size_t c = 0; c < grid.n_cores_axis.size(); ++c) {
      PeakEntry e;
      e.delta_index = d;
      e.delta = grid.delta_axis[d];
      e.n_cores = grid.n_cores_axis[c];
      for (std::size_t q = 0; q < grid.n_q_axis.size(); ++q) {
        const GridCell& cell = grid.cells[grid.index(d, c, q)];
        if (!cell.feasible) continue;
        if (!e.found || cell.value.gamma > e.gamma_star) {
          e.found = true;
          e.gamma_star = cell.value.gamma;
          e.n_q_star = grid.n_q_axis[q];
        }
      }
      out.push_back(e);
    }
  }
  return out;
}

std::vector<double> level_crossings(const std::vector<double>& n_q,
                                    const std::vector<double>& gamma,
                                    double level) {
  if (n_q.size() != gamma.size())
    throw DomainError("level_crossings: n_q and gamma sizes differ");
  if (!(level > 0.0) || !std::isfinite(level))
    throw DomainError("level must be finite and > 0, got " + num(level));
  for (std::size_t i = 0; i < n_q.size(); ++i) {
    if (!(n_q[i] > 0.0) || !std::isfinite(n_q[i]))
      throw DomainError("n_q samples must be finite and > 0, got " +
                        num(n_q[i]));
    if (!(gamma[i] > 0.0) || !std::isfinite(gamma[i]))
      throw DomainError("gamma samples must be finite and > 0, got " +
                        num(gamma[i]));
    if (i > 0 && n_q[i] <= n_q[i - 1])
      throw DomainError("n_q samples must be strictly increasing at index " +
                        std::to_string(i));
  }

  std::vector<double> out;
  const double llevel = std::log(level);
  for (std::size_t i = 0; i + 1 < n_q.size(); ++i) {
    const double g0 = gamma[i];
    const double g1 = gamma[i + 1];
    const double lo = std::min(g0, g1);
    const double hi = std::max(g0, g1);
    if (!(lo <= level && level < hi)) continue;
    double x;
    if (g0 == level) {
      x = n_q[i];
    } else if (g1 == level) {
      x = n_q[i + 1];
    } else {
      const double t = (llevel - std::log(g0)) / (std::log(g1) - std::log(g0));
      x = std::exp(std::log(n_q[i]) +
                   t * (std::log(n_q[i + 1]) - std::log(n_q[i])));
    }
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

namespace {

// Bisects the continuous merit between bracketing samples until the
// re-evaluated merit meets the tolerance; fails when the level sits inside
// a core-count discontinuity of the merit function.
bool refine_crossing(const Scenario& s, int cores, double xa, double ga,
                     double xb, double gb, double level, double tol_rel,
                     double& x_out, double& g_out) {
  auto within = [&](double g) {
    return std::fabs(g - level) <= tol_rel * level;
  };
  double best_x = xa;
  double best_g = ga;
  auto consider = [&](double x, double g) {
    if (std::fabs(g - level) < std::fabs(best_g - level)) {
      best_x = x;
      best_g = g;
    }
  };
  consider(xb, gb);
  if (ga != level && gb != level) {
    const bool rising_at_lo = ga < level;
    double lo = xa;
    double hi = xb;
    for (int it = 0; it < 200; ++it) {
      const double xm = std::sqrt(lo * hi);
      if (!(xm > lo) || !(xm < hi)) break;
      const double gm = gamma_at(s, xm, cores).gamma;
      consider(xm, gm);
      if (gm == level) break;
      if ((gm < level) == rising_at_lo)
        lo = xm;
      else
        hi = xm;
    }
  }
  if (!within(best_g)) return false;
  x_out = best_x;
  g_out = best_g;
  return true;
}

}  // namespace

IsolineSet isolines(const ResultGrid& grid, const std::vector<double>& levels,
                    double tol_rel) {
  if (!(tol_rel > 0.0) || !(tol_rel < 1.0))
    throw DomainError("isoline tol_rel must be in (0, 1), got " +
                      num(tol_rel));

  const std::size_t ndelta = grid.delta_axis.size();
  const std::size_t ncores = grid.n_cores_axis.size();
  const std::size_t nq = grid.n_q_axis.size();

  IsolineSet out;
  for (double level : levels) {
    if (!(level > 0.0) || !std::isfinite(level))
      throw DomainError("isoline level must be finite and > 0, got " +
                        num(level));
    IsolineLevel lev;
    lev.level = level;
    for (std::size_t d = 0; d < ndelta; ++d) {
      const Scenario scen = grid.scenario_for(d);
      struct Tip {
        std::size_t poly;
        double n_q;
      };
      std::vector<Tip> prev_tips;
      for (std::size_t c = 0; c < ncores; ++c) {
        const int cores = grid.n_cores_axis[c];
        std::vector<IsolinePoint> row;
        for (std::size_t q = 0; q + 1 < nq; ++q) {
          const GridCell& a = grid.cells[grid.index(d, c, q)];
          const GridCell& b = grid.cells[grid.index(d, c, q + 1)];
          if (!a.feasible || !b.feasible) continue;
          const double g0 = a.value.gamma;
          const double g1 = b.value.gamma;
          if (!(g0 > 0.0) || !(g1 > 0.0)) continue;
          if (!(std::min(g0, g1) <= level && level < std::max(g0, g1)))
            continue;
          double x = 0.0;
          double g = 0.0;
          bool ok;
          if (g0 == level) {
            x = static_cast<double>(grid.n_q_axis[q]);
            g = g0;
            ok = true;
          } else if (g1 == level) {
            x = static_cast<double>(grid.n_q_axis[q + 1]);
            g = g1;
            ok = true;
          } else {
            ok = refine_crossing(scen, cores,
                                 static_cast<double>(grid.n_q_axis[q]), g0,
                                 static_cast<double>(grid.n_q_axis[q + 1]), g1,
                                 level, tol_rel, x, g);
          }
          if (!ok) continue;
          if (!row.empty() && row.back().n_q == x) continue;
          IsolinePoint pt;
          pt.delta_index = d;
          pt.n_cores = cores;
          pt.n_q = x;
          pt.gamma = g;
          row.push_back(pt);
        }

        struct Cand {
          double dist;
          std::size_t prev;
          std::size_t cur;
        };
        std::vector<Cand> cands;
        for (std::size_t pi = 0; pi < prev_tips.size(); ++pi)
          for (std::size_t ri = 0; ri < row.size(); ++ri)
            cands.push_back(
                {std::fabs(std::log(prev_tips[pi].n_q) - std::log(row[ri].n_q)),
                 pi, ri});
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
          if (a.dist != b.dist) return a.dist < b.dist;
          if (a.prev != b.prev) return a.prev < b.prev;
          return a.cur < b.cur;
        });
        std::vector<bool> prev_used(prev_tips.size(), false);
        std::vector<std::size_t> row_poly(row.size(),
                                          std::numeric_limits<std::size_t>::max());
        for (const auto& cand : cands) {
          if (prev_used[cand.prev] ||
              row_poly[cand.cur] != std::numeric_limits<std::size_t>::max())
            continue;
          prev_used[cand.prev] = true;
          row_poly[cand.cur] = prev_tips[cand.prev].poly;
        }
        std::vector<Tip> tips;
        for (std::size_t ri = 0; ri < row.size(); ++ri) {
          std::size_t poly = row_poly[ri];
          if (poly == std::numeric_limits<std::size_t>::max()) {
            poly = lev.polylines.size();
            lev.polylines.emplace_back();
          }
          lev.polylines[poly].points.push_back(row[ri]);
          tips.push_back({poly, row[ri].n_q});
        }
        prev_tips = std::move(tips);
      }
    }
    out.levels.push_back(std::move(lev));
  }
  return out;
}

}  // namespace qdse
