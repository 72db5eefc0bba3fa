#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"

#include "helpers.hpp"
#include "qdse/analyses.hpp"
#include "qdse/catalog.hpp"
#include "qdse/errors.hpp"
#include "qdse/explorer.hpp"
#include "qdse/merit.hpp"

using namespace qdse;

namespace {

PerformanceCurve make_curve(std::vector<std::int64_t> n_q,
                            std::vector<double> gamma,
                            std::vector<int> n_used, int n_cores) {
  PerformanceCurve c;
  c.n_cores = n_cores;
  c.n_q = std::move(n_q);
  c.gamma = std::move(gamma);
  c.n_used = std::move(n_used);
  return c;
}

std::vector<TechnologyProfile> two_tech_catalog() {
  std::vector<TechnologyProfile> cat;
  cat.push_back(testutil::ion_profile());
  TechnologyProfile fast;
  fast.name = "fast_gate";
  fast.tau_c_s = 1e-4;
  fast.gate_latency_s = 2.5e-8;
  fast.fidelity = 0.9995;
  fast.quality_factor = fast.tau_c_s / fast.gate_latency_s;
  cat.push_back(fast);
  return cat;
}

}  // namespace

TEST_CASE("sawtooth report finds drops at core-capacity boundaries") {
  const PerformanceCurve curve = make_curve(
      {999, 1000, 1001, 2000, 2001}, {10, 11, 9, 8, 7}, {1, 1, 2, 2, 3}, 4);
  const std::vector<SawtoothDrop> drops = sawtooth_report(curve, 1000);
  REQUIRE_EQ(drops.size(), 2);
  CHECK_EQ(drops[0].k, 1);
  CHECK_EQ(drops[0].n_q_before, 1000);
  CHECK_EQ(drops[0].n_q_after, 1001);
  CHECK_EQ(drops[0].gamma_before, 11.0);
  CHECK_EQ(drops[0].gamma_after, 9.0);
  CHECK_EQ(drops[1].k, 2);
  CHECK_EQ(drops[1].n_q_before, 2000);
  CHECK_EQ(drops[1].n_q_after, 2001);
  CHECK_EQ(drops[1].gamma_before, 8.0);
  CHECK_EQ(drops[1].gamma_after, 7.0);
}

TEST_CASE("sawtooth report ignores boundaries where gamma does not fall") {
  SUBCASE("gamma rises across the boundary") {
    const PerformanceCurve curve =
        make_curve({1000, 1001}, {10, 12}, {1, 2}, 4);
    CHECK(sawtooth_report(curve, 1000).empty());
  }
  SUBCASE("core count does not change across the boundary") {
    const PerformanceCurve curve =
        make_curve({1000, 1001}, {10, 9}, {1, 1}, 4);
    CHECK(sawtooth_report(curve, 1000).empty());
  }
}

TEST_CASE("sawtooth report skips boundaries below the sampled range") {
  const PerformanceCurve curve = make_curve(
      {1500, 2000, 2001}, {10, 8, 7}, {2, 2, 3}, 4);
  const std::vector<SawtoothDrop> drops = sawtooth_report(curve, 1000);
  REQUIRE_EQ(drops.size(), 1);
  CHECK_EQ(drops[0].k, 2);
}

TEST_CASE("sawtooth report requires samples at each boundary pair") {
  SUBCASE("missing boundary sample") {
    const PerformanceCurve curve = make_curve(
        {999, 1000, 1001, 1999, 2001}, {10, 11, 9, 8, 7}, {1, 1, 2, 2, 3}, 4);
    const std::string msg = testutil::message_of<DomainError>(
        [&] { (void)sawtooth_report(curve, 1000); });
    CHECK(msg.find("requires a sample at n_q=2000") != std::string::npos);
  }
  SUBCASE("missing sample just past the boundary") {
    const PerformanceCurve curve = make_curve(
        {999, 1000, 1002, 2000, 2001}, {10, 11, 9, 8, 7}, {1, 1, 2, 2, 3}, 4);
    const std::string msg = testutil::message_of<DomainError>(
        [&] { (void)sawtooth_report(curve, 1000); });
    CHECK(msg.find("requires a sample at n_q=1001") != std::string::npos);
  }
}

TEST_CASE("sawtooth report validates inputs") {
  SUBCASE("mismatched array lengths") {
    const PerformanceCurve curve = make_curve({1000, 1001}, {10}, {1, 2}, 4);
    CHECK_THROWS_AS((void)sawtooth_report(curve, 1000), DomainError);
  }
  SUBCASE("non-positive capacity") {
    const PerformanceCurve curve =
        make_curve({1000, 1001}, {10, 9}, {1, 2}, 4);
    CHECK_THROWS_AS((void)sawtooth_report(curve, 0), DomainError);
  }
  SUBCASE("empty curve yields no drops") {
    const PerformanceCurve curve = make_curve({}, {}, {}, 4);
    CHECK(sawtooth_report(curve, 1000).empty());
  }
}

TEST_CASE("scalability analysis rows agree with direct evaluation") {
  Scenario sc = testutil::ion_scenario();
  sc.n_q_norm = 10000;
  const std::vector<int> cores = {1, 2, 4};
  LogAxisSpec axis;
  axis.min = 10;
  axis.max = 10000;
  axis.points = 40;
  const ScalabilityReport report =
      scalability_analysis(sc, cores, NQAxisSpec{axis}, 2);

  REQUIRE_EQ(report.rows.size(), cores.size());
  CHECK_EQ(report.n_q_axis, build_n_q_axis(NQAxisSpec{axis}, sc.n_q_lim));

  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const ScalabilityRow& row = report.rows[r];
    CHECK_EQ(row.curve.n_cores, cores[r]);
    REQUIRE_EQ(row.curve.n_q.size(), report.n_q_axis.size());
    REQUIRE_EQ(row.curve.gamma.size(), report.n_q_axis.size());
    REQUIRE_EQ(row.curve.n_used.size(), report.n_q_axis.size());

    double best = 0.0;
    double best_n_q = 0.0;
    for (std::size_t i = 0; i < row.curve.n_q.size(); ++i) {
      const MeritBreakdown direct =
          gamma_at(sc, row.curve.n_q[i], row.curve.n_cores);
      CHECK_EQ(row.curve.gamma[i], direct.gamma);
      CHECK_EQ(row.curve.n_used[i], direct.n_used);
      if (direct.gamma > best) {
        best = direct.gamma;
        best_n_q = row.curve.n_q[i];
      }
    }
    REQUIRE(row.peak.found);
    CHECK_EQ(row.peak.n_cores, cores[r]);
    CHECK_EQ(row.peak.gamma_star, best);
    CHECK_EQ(row.peak.n_q_star, best_n_q);

    const std::vector<SawtoothDrop> drops =
        sawtooth_report(row.curve, sc.n_q_lim);
    REQUIRE_EQ(row.drops.size(), drops.size());
    for (std::size_t i = 0; i < drops.size(); ++i) {
      CHECK_EQ(row.drops[i].k, drops[i].k);
      CHECK_EQ(row.drops[i].gamma_before, drops[i].gamma_before);
      CHECK_EQ(row.drops[i].gamma_after, drops[i].gamma_after);
    }
  }
}

TEST_CASE("scalability analysis counts one drop per extra core in range") {
  Scenario sc = testutil::ion_scenario();
  sc.n_q_norm = 10000;
  LogAxisSpec axis;
  axis.min = 10;
  axis.max = 10000;
  axis.points = 60;
  const ScalabilityReport report =
      scalability_analysis(sc, {1, 4}, NQAxisSpec{axis}, 1);
  CHECK(report.rows[0].drops.empty());
  REQUIRE_EQ(report.rows[1].drops.size(), 3);
  CHECK_EQ(report.rows[1].drops[0].k, 1);
  CHECK_EQ(report.rows[1].drops[1].k, 2);
  CHECK_EQ(report.rows[1].drops[2].k, 3);
  for (const SawtoothDrop& d : report.rows[1].drops) {
    CHECK_LT(d.gamma_after, d.gamma_before);
  }
}

TEST_CASE("technology gap analysis orders entries by technology then delta") {
  const std::vector<TechnologyProfile> cat = two_tech_catalog();
  Scenario base = testutil::ion_scenario();
  base.n_q_norm = 100000;

  QtgaMode mode;
  mode.kind = QtgaMode::Kind::FixedCores;
  mode.fixed_cores = 2;

  QtgaOptions opt;
  LogAxisSpec axis;
  axis.min = 10;
  axis.max = 100000;
  axis.points = 30;
  opt.n_q_axis = NQAxisSpec{axis};
  opt.workers = 2;

  const QtgaReport report = qtga(cat, {0.0, 1.0}, mode, base, opt);
  REQUIRE_EQ(report.entries.size(), 4);
  CHECK_EQ(report.entries[0].technology, "ion_trap");
  CHECK_EQ(report.entries[0].delta, 0.0);
  CHECK_EQ(report.entries[1].technology, "ion_trap");
  CHECK_EQ(report.entries[1].delta, 1.0);
  CHECK_EQ(report.entries[2].technology, "fast_gate");
  CHECK_EQ(report.entries[2].delta, 0.0);
  CHECK_EQ(report.entries[3].technology, "fast_gate");
  CHECK_EQ(report.entries[3].delta, 1.0);

  const TechnologyProfile& ion = cat[0];
  CHECK_EQ(report.entries[0].fidelity, ion.fidelity);
  CHECK_EQ(report.entries[0].quality_factor, ion.quality_factor);

  const TechnologyProfile evolved = evolve(ion, EvolutionDelta{1.0});
  CHECK_EQ(report.entries[1].fidelity, evolved.fidelity);
  CHECK_EQ(report.entries[1].quality_factor, evolved.quality_factor);
  CHECK_EQ(report.entries[1].fidelity, 0.9995);

  for (const QtgaEntry& entry : report.entries) {
    REQUIRE_FALSE(entry.curve.empty());
    Scenario sc = base;
    sc.fidelity = entry.fidelity;
    sc.quality_factor = entry.quality_factor;
    for (const QtgaPoint& p : entry.curve) {
      CHECK_EQ(p.n_cores, 2);
      const MeritBreakdown direct = gamma_at(sc, static_cast<double>(p.n_q), 2);
      CHECK_EQ(p.gamma, direct.gamma);
    }
  }
}

TEST_CASE("technology gap analysis peak mode keeps one point per entry") {
  const std::vector<TechnologyProfile> cat = two_tech_catalog();
  Scenario base = testutil::ion_scenario();
  base.n_q_norm = 100000;

  QtgaMode mode;
  mode.kind = QtgaMode::Kind::PeakPerCores;

  QtgaOptions opt;
  LogAxisSpec axis;
  axis.min = 10;
  axis.max = 100000;
  axis.points = 50;
  opt.n_q_axis = NQAxisSpec{axis};
  opt.n_cores_axis = {4};

  const QtgaReport report = qtga(cat, {0.0, 1.0}, mode, base, opt);
  REQUIRE_EQ(report.entries.size(), 4);
  for (const QtgaEntry& entry : report.entries) {
    REQUIRE_EQ(entry.curve.size(), 1);
    const QtgaPoint& p = entry.curve[0];
    CHECK_EQ(p.n_cores, 4);
    Scenario sc = base;
    sc.fidelity = entry.fidelity;
    sc.quality_factor = entry.quality_factor;
    const MeritBreakdown direct = gamma_at(sc, static_cast<double>(p.n_q), 4);
    CHECK_EQ(p.gamma, direct.gamma);
  }

  SUBCASE("improved technologies never peak lower") {
    CHECK_GT(report.entries[1].curve[0].gamma, report.entries[0].curve[0].gamma);
    CHECK_GT(report.entries[3].curve[0].gamma, report.entries[2].curve[0].gamma);
  }
}

TEST_CASE("technology gap analysis rejects an empty catalog") {
  QtgaMode mode;
  mode.kind = QtgaMode::Kind::FixedCores;
  mode.fixed_cores = 1;
  QtgaOptions opt;
  opt.n_q_axis = NQAxisSpec{std::vector<std::int64_t>{10, 20}};
  const std::string msg = testutil::message_of<ConfigError>([&] {
    (void)qtga({}, {0.0}, mode, testutil::ion_scenario(), opt);
  });
  CHECK(msg.find("catalog") != std::string::npos);
}

TEST_CASE("equivalent design search matches a brute-force rescan") {
  Scenario sc = testutil::ion_scenario();
  sc.n_q_lim = 10;
  sc.n_q_norm = 50;

  std::vector<std::int64_t> qubits;
  for (std::int64_t q = 1; q <= 50; ++q) qubits.push_back(q);

  SweepSpec spec;
  spec.scenario = sc;
  spec.technology = testutil::ion_profile();
  spec.delta_axis = {0.0, 0.5};
  spec.n_q_axis = NQAxisSpec{qubits};
  spec.n_cores_axis = {1, 2, 4, 8};

  for (const NormMode mode : {NormMode::Linear, NormMode::Log}) {
    spec.scenario.norm_mode = mode;
    const ResultGrid grid = sweep(spec, 2);

    EquivalenceRef ref;
    ref.delta = 0.5;
    ref.n_cores = 4;
    ref.n_q = 30;

    for (const double tol : {0.0, 1e-3, 0.2}) {
      const EquivalenceMatch match = equivalent_design(grid, grid, ref, tol);
      CHECK_EQ(match.reference.delta, 0.5);
      CHECK_EQ(match.reference.n_cores, 4);
      CHECK_EQ(match.reference.n_q, 30);

      const std::size_t d_ref = 1;
      const std::size_t c_ref = 2;
      const std::size_t q_ref = 29;
      const double g_ref = grid.cells[grid.index(d_ref, c_ref, q_ref)].value.gamma;
      CHECK_EQ(match.reference.gamma, g_ref);

      std::vector<EquivalenceEntry> expected;
      for (std::size_t d = 0; d < grid.delta_axis.size(); ++d) {
        for (std::size_t c = 0; c < grid.n_cores_axis.size(); ++c) {
          for (std::size_t q = 0; q < grid.n_q_axis.size(); ++q) {
            const GridCell& cell = grid.cells[grid.index(d, c, q)];
            if (!cell.feasible) continue;
            if (std::fabs(cell.value.gamma - g_ref) > tol * g_ref) continue;
            EquivalenceEntry e;
            e.technology = grid.contexts[d].technology;
            e.delta = grid.delta_axis[d];
            e.n_cores = grid.n_cores_axis[c];
            e.n_q = grid.n_q_axis[q];
            e.gamma = cell.value.gamma;
            e.rel_dev = (cell.value.gamma - g_ref) / g_ref;
            expected.push_back(e);
          }
        }
      }
      std::sort(expected.begin(), expected.end(),
                [](const EquivalenceEntry& a, const EquivalenceEntry& b) {
                  if (a.n_q != b.n_q) return a.n_q < b.n_q;
                  if (a.n_cores != b.n_cores) return a.n_cores < b.n_cores;
                  return a.delta < b.delta;
                });

      REQUIRE_EQ(match.matches.size(), expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK_EQ(match.matches[i].technology, expected[i].technology);
        CHECK_EQ(match.matches[i].delta, expected[i].delta);
        CHECK_EQ(match.matches[i].n_cores, expected[i].n_cores);
        CHECK_EQ(match.matches[i].n_q, expected[i].n_q);
        CHECK_EQ(match.matches[i].gamma, expected[i].gamma);
        CHECK_EQ(match.matches[i].rel_dev, expected[i].rel_dev);
      }

      if (tol == 0.0) {
        REQUIRE_FALSE(match.matches.empty());
        bool self_found = false;
        for (const EquivalenceEntry& e : match.matches) {
          if (e.delta == 0.5 && e.n_cores == 4 && e.n_q == 30) {
            self_found = true;
            CHECK_EQ(e.rel_dev, 0.0);
          }
        }
        CHECK(self_found);
      }
    }
  }
}

TEST_CASE("equivalent design search validates the reference point") {
  Scenario sc = testutil::ion_scenario();
  sc.n_q_lim = 10;
  sc.n_q_norm = 50;

  SweepSpec spec;
  spec.scenario = sc;
  spec.n_q_axis = NQAxisSpec{std::vector<std::int64_t>{10, 20, 30}};
  spec.n_cores_axis = {1, 2};
  const ResultGrid grid = sweep(spec, 1);

  SUBCASE("reference qubit count must lie on the grid axis") {
    EquivalenceRef ref;
    ref.delta = 0.0;
    ref.n_cores = 1;
    ref.n_q = 25;
    const std::string msg = testutil::message_of<DomainError>(
        [&] { (void)equivalent_design(grid, grid, ref, 0.01); });
    CHECK(msg.find("not on the grid") != std::string::npos);
  }
  SUBCASE("reference core count must lie on the grid axis") {
    EquivalenceRef ref;
    ref.delta = 0.0;
    ref.n_cores = 3;
    ref.n_q = 20;
    const std::string msg = testutil::message_of<DomainError>(
        [&] { (void)equivalent_design(grid, grid, ref, 0.01); });
    CHECK(msg.find("not on the grid") != std::string::npos);
  }
  SUBCASE("reference delta must lie on the grid axis") {
    EquivalenceRef ref;
    ref.delta = 0.25;
    ref.n_cores = 1;
    ref.n_q = 20;
    const std::string msg = testutil::message_of<DomainError>(
        [&] { (void)equivalent_design(grid, grid, ref, 0.01); });
    CHECK(msg.find("not on the grid") != std::string::npos);
  }
  SUBCASE("tolerance outside its range") {
    EquivalenceRef ref;
    ref.delta = 0.0;
    ref.n_cores = 1;
    ref.n_q = 20;
    CHECK_THROWS_AS((void)equivalent_design(grid, grid, ref, 0.6), DomainError);
    CHECK_THROWS_AS((void)equivalent_design(grid, grid, ref, -0.1),
                    DomainError);
  }
}

TEST_CASE("equivalent design search rejects an infeasible reference") {
  Scenario sc = testutil::ion_scenario();
  sc.n_q_lim = 10;
  sc.n_q_norm = 50;

  SweepSpec spec;
  spec.scenario = sc;
  spec.n_q_axis = NQAxisSpec{std::vector<std::int64_t>{10, 20, 30}};
  spec.n_cores_axis = {1, 2};
  Constraint cap;
  cap.expr = ConstraintExpr::MaxTotalQubits;
  cap.kind = ConstraintKind::Inequality;
  cap.bound = 15;
  spec.constraints = {cap};
  const ResultGrid grid = sweep(spec, 1);

  EquivalenceRef ref;
  ref.delta = 0.0;
  ref.n_cores = 1;
  ref.n_q = 20;
  const std::string msg = testutil::message_of<DomainError>(
      [&] { (void)equivalent_design(grid, grid, ref, 0.01); });
  CHECK(msg.find("infeasible") != std::string::npos);
}
