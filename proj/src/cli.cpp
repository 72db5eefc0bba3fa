#include "qdse/cli.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdse/analyses.hpp"
#include "qdse/catalog.hpp"
#include "qdse/errors.hpp"
#include "qdse/explorer.hpp"
#include "qdse/io.hpp"
#include "qdse/merit.hpp"
#include "qdse/version.hpp"

namespace qdse {

namespace {

struct Args {
  std::string config;
  std::string catalog;
  std::string out;
  std::string format;
  int precision = -1;
  int workers = 1;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--config", a.config, "run configuration JSON file")
      ->required();
  cmd->add_option("--catalog", a.catalog,
                  "technology catalog JSON file (overrides config)");
  cmd->add_option("--out", a.out,
                  "output file (overrides config; default stdout)");
  cmd->add_option("--format", a.format,
                  "output format: csv or json (overrides config)");
  cmd->add_option("--precision", a.precision,
                  "significant digits for real values, 1 to 17");
  cmd->add_option("--workers", a.workers,
                  "worker threads; 0 selects hardware concurrency");
}

struct Inputs {
  RunConfig rc;
  std::vector<TechnologyProfile> catalog;
  const TechnologyProfile* tech = nullptr;
  int workers = 1;
};

const TechnologyProfile* select_tech(
    const RunConfig& rc, const std::vector<TechnologyProfile>& catalog) {
  if (!rc.sweep.technology) return nullptr;
  if (catalog.empty())
    throw ConfigError("sweep.technology requires a catalog");
  for (const auto& t : catalog)
    if (t.name == *rc.sweep.technology) return &t;
  throw ConfigError("technology '" + *rc.sweep.technology +
                    "' not found in catalog");
}

// Default normalization anchor: the top of the qubit axis.
std::int64_t default_norm(const RunConfig& rc) {
  try {
    const auto axis =
        build_n_q_axis(rc.sweep.n_q_axis, rc.scenario.n_q_lim);
    return std::max<std::int64_t>(axis.back(), 2);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sweep.n_q_axis: ") + e.what());
  }
}

SweepSpec base_spec(const Inputs& in) {
  SweepSpec spec;
  spec.scenario = resolve_scenario(in.rc.scenario, in.tech, default_norm(in.rc));
  if (in.tech) spec.technology = *in.tech;
  spec.delta_axis = in.rc.sweep.delta_axis;
  spec.n_q_axis = in.rc.sweep.n_q_axis;
  spec.n_cores_axis = in.rc.sweep.n_cores_axis;
  spec.constraints = in.rc.sweep.constraints;
  return spec;
}

ResultDocument run_eval(const Inputs& in) {
  if (!in.rc.analysis.point)
    throw ConfigError("eval requires analysis.point");
  const DesignPoint pt = *in.rc.analysis.point;
  SweepSpec spec;
  spec.scenario = resolve_scenario(in.rc.scenario, in.tech,
                                   std::max<std::int64_t>(pt.n_q, 2));
  if (in.tech) spec.technology = *in.tech;
  spec.delta_axis = in.rc.sweep.delta_axis;
  spec.n_q_axis = std::vector<std::int64_t>{pt.n_q};
  spec.n_cores_axis = {pt.n_cores};
  spec.constraints = in.rc.sweep.constraints;
  return document_for(sweep(spec, in.workers));
}

ResultDocument run_sweep(const Inputs& in) {
  return document_for(sweep(base_spec(in), in.workers));
}

ResultDocument run_peaks(const Inputs& in) {
  const ResultGrid grid = sweep(base_spec(in), in.workers);
  return document_for(peak_by_cores(grid), grid);
}

ResultDocument run_isolines(const Inputs& in) {
  if (in.rc.analysis.isoline_levels.empty())
    throw ConfigError("isolines requires analysis.isoline_levels");
  const ResultGrid grid = sweep(base_spec(in), in.workers);
  return document_for(isolines(grid, in.rc.analysis.isoline_levels,
                               in.rc.analysis.isoline_tol_rel),
                      grid);
}

ResultDocument run_scalability(const Inputs& in) {
  const Scenario scen =
      resolve_scenario(in.rc.scenario, in.tech, default_norm(in.rc));
  return document_for(scalability_analysis(
      scen, in.rc.sweep.n_cores_axis, in.rc.sweep.n_q_axis, in.workers));
}

ResultDocument run_qtga(const Inputs& in) {
  if (in.catalog.empty()) throw ConfigError("qtga requires a catalog");
  if (scenario_sets_source(in.rc.scenario))
    throw ConfigError(
        "technology-gap analysis derives fidelity and quality factor from "
        "the catalog; remove scenario.fidelity, scenario.quality_factor, "
        "scenario.tau_c_s, and scenario.gate_latency_s");
  std::vector<TechnologyProfile> techs;
  if (in.rc.analysis.technologies.empty()) {
    techs = in.catalog;
  } else {
    for (const auto& name : in.rc.analysis.technologies) {
      const auto it = std::find_if(
          in.catalog.begin(), in.catalog.end(),
          [&](const TechnologyProfile& t) { return t.name == name; });
      if (it == in.catalog.end())
        throw ConfigError("technology '" + name + "' not found in catalog");
      techs.push_back(*it);
    }
  }
  const Scenario base =
      scenario_skeleton(in.rc.scenario, default_norm(in.rc));
  QtgaOptions opts;
  opts.n_q_axis = in.rc.sweep.n_q_axis;
  opts.n_cores_axis = in.rc.sweep.n_cores_axis;
  opts.workers = in.workers;
  return document_for(
      qtga(techs, in.rc.analysis.delta_list, in.rc.analysis.qtga_mode, base,
           opts));
}

ResultDocument run_equiv(const Inputs& in) {
  if (!in.rc.analysis.equivalence)
    throw ConfigError("equiv requires analysis.equivalence");
  const EquivSpec eq = *in.rc.analysis.equivalence;
  SweepSpec sa = base_spec(in);
  SweepSpec sb = sa;
  sa.delta_axis = {eq.delta_a};
  sb.delta_axis = {eq.delta_b};
  const ResultGrid grid_a = sweep(sa, in.workers);
  const ResultGrid grid_b = sweep(sb, in.workers);
  EquivalenceRef ref;
  ref.delta = eq.delta_a;
  ref.n_cores = eq.n_cores;
  ref.n_q = eq.n_q;
  return document_for(equivalent_design(grid_a, grid_b, ref, eq.tol_rel));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "design-space exploration for multi-core quantum architectures"};
  app.name(kToolName);
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  Args args;
  struct Cmd {
    CLI::App* sub;
    ResultDocument (*build)(const Inputs&);
  };
  std::vector<Cmd> cmds;
  auto add = [&](const char* name, const char* desc,
                 ResultDocument (*build)(const Inputs&)) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, args);
    cmds.push_back({sub, build});
  };
  add("eval", "evaluate the merit of a single design point", run_eval);
  add("sweep", "evaluate the merit over the configured design grid",
      run_sweep);
  add("peaks", "report the best qubit count per core count", run_peaks);
  add("isolines", "trace constant-merit lines over the design grid",
      run_isolines);
  add("scalability", "merit curves, peaks, and saw-tooth drops per core "
      "count", run_scalability);
  add("qtga", "compare catalog technologies under evolution steps",
      run_qtga);
  add("equiv", "find designs matching a reference merit across evolution "
      "steps", run_equiv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Inputs in;
    const std::string config_text = read_file(args.config);
    in.rc = parse_config(config_text);
    const std::string catalog_path =
        !args.catalog.empty() ? args.catalog
                              : in.rc.catalog_path.value_or("");
    std::string catalog_text;
    if (!catalog_path.empty()) {
      catalog_text = read_file(catalog_path);
      in.catalog = load_catalog(catalog_text);
    }
    in.tech = select_tech(in.rc, in.catalog);
    if (!args.out.empty()) in.rc.output.path = args.out;
    if (!args.format.empty())
      in.rc.output.format = output_format_from_name(args.format);
    if (args.precision != -1) {
      if (args.precision < 1 || args.precision > 17)
        throw ConfigError("--precision must be in [1, 17], got " +
                          std::to_string(args.precision));
      in.rc.output.precision = args.precision;
    }
    in.workers = args.workers;

    ResultDocument doc;
    for (const auto& cmd : cmds) {
      if (cmd.sub->parsed()) {
        doc = cmd.build(in);
        break;
      }
    }
    doc.provenance =
        make_provenance(config_text, catalog_text, in.rc.output.precision);
    const std::string text = emit(doc, in.rc.output.format);
    if (in.rc.output.path)
      write_file(*in.rc.output.path, text);
    else
      out << text;
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qdse
