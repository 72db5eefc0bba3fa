#include "qdse/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdse/errors.hpp"
#include "qdse/version.hpp"

namespace qdse {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_num(const json& v, const std::string& path) {
  if (!v.is_number())
    throw ConfigError("config " + path + " must be a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError("config " + path + " must be an integer");
  return v.get<std::int64_t>();
}

std::string as_str(const json& v, const std::string& path) {
  if (!v.is_string())
    throw ConfigError("config " + path + " must be a string");
  return v.get<std::string>();
}

const json& as_obj(const json& v, const std::string& path) {
  if (!v.is_object())
    throw ConfigError("config " + path + " must be an object");
  return v;
}

const json& as_arr(const json& v, const std::string& path) {
  if (!v.is_array())
    throw ConfigError("config " + path + " must be an array");
  return v;
}

}  // namespace

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + name +
                    "', expected csv or json");
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

std::string format_double(double v, int precision) {
  if (precision < 1 || precision > 17)
    throw DomainError("precision must be in [1, 17], got " +
                      std::to_string(precision));
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

double quantize(double v, int precision) {
  return std::strtod(format_double(v, precision).c_str(), nullptr);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_tag(std::string_view data) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64,
                static_cast<std::uint64_t>(fnv1a64(data)));
  return std::string("fnv1a64:") + buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw ConfigError("cannot read file: " + path);
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << data;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

Provenance make_provenance(const std::string& config_text,
                           const std::string& catalog_text, int precision) {
  Provenance p;
  p.tool = kToolName;
  p.version = kToolVersion;
  p.config_hash = hash_tag(config_text);
  p.catalog_hash = catalog_text.empty() ? "" : hash_tag(catalog_text);
  p.timestamp = utc_timestamp();
  p.precision = precision;
  return p;
}

ResultDocument document_for(const ResultGrid& grid) {
  ResultDocument doc;
  doc.schema = "grid";
  doc.columns = {"technology", "delta", "n_cores", "n_q", "j_qb", "j_qf",
                 "j_f",        "j_i",   "j_c",     "n_used", "gamma",
                 "feasible"};
  for (std::size_t d = 0; d < grid.delta_axis.size(); ++d) {
    for (std::size_t c = 0; c < grid.n_cores_axis.size(); ++c) {
      for (std::size_t q = 0; q < grid.n_q_axis.size(); ++q) {
        const GridCell& cell = grid.cells[grid.index(d, c, q)];
        if (!cell.feasible) continue;
        const MeritBreakdown& b = cell.value;
        doc.records.push_back(
            {grid.contexts[d].technology, grid.delta_axis[d],
             static_cast<std::int64_t>(grid.n_cores_axis[c]), grid.n_q_axis[q],
             b.j_qb, b.j_qf, b.j_f, b.j_i, b.j_c,
             static_cast<std::int64_t>(b.n_used), b.gamma,
             static_cast<std::int64_t>(1)});
      }
    }
  }
  return doc;
}

ResultDocument document_for(const std::vector<PeakEntry>& peaks,
                            const ResultGrid& grid) {
  ResultDocument doc;
  doc.schema = "peaks";
  doc.columns = {"technology", "delta", "n_cores", "n_q_star", "gamma_star"};
  for (const auto& p : peaks) {
    if (!p.found) continue;
    doc.records.push_back({grid.contexts[p.delta_index].technology, p.delta,
                           static_cast<std::int64_t>(p.n_cores), p.n_q_star,
                           p.gamma_star});
  }
  return doc;
}

ResultDocument document_for(const IsolineSet& set, const ResultGrid& grid) {
  ResultDocument doc;
  doc.schema = "isolines";
  doc.columns = {"level",   "polyline", "seq", "technology",
                 "delta",   "n_cores",  "n_q", "gamma"};
  for (const auto& lev : set.levels) {
    for (std::size_t pi = 0; pi < lev.polylines.size(); ++pi) {
      const auto& points = lev.polylines[pi].points;
      for (std::size_t si = 0; si < points.size(); ++si) {
        const IsolinePoint& pt = points[si];
        doc.records.push_back({lev.level, static_cast<std::int64_t>(pi),
                               static_cast<std::int64_t>(si),
                               grid.contexts[pt.delta_index].technology,
                               grid.delta_axis[pt.delta_index],
                               static_cast<std::int64_t>(pt.n_cores), pt.n_q,
                               pt.gamma});
      }
    }
  }
  return doc;
}

ResultDocument document_for(const ScalabilityReport& report) {
  ResultDocument doc;
  doc.schema = "scalability";
  doc.columns = {"record", "n_cores",      "n_q",         "gamma",
                 "n_used", "k",            "gamma_before", "gamma_after"};
  for (const auto& row : report.rows) {
    const std::int64_t cores = row.curve.n_cores;
    for (std::size_t i = 0; i < row.curve.n_q.size(); ++i) {
      doc.records.push_back({std::string("curve"), cores, row.curve.n_q[i],
                             row.curve.gamma[i],
                             static_cast<std::int64_t>(row.curve.n_used[i]),
                             std::monostate{}, std::monostate{},
                             std::monostate{}});
    }
    if (row.peak.found) {
      doc.records.push_back({std::string("peak"), cores, row.peak.n_q_star,
                             row.peak.gamma_star, std::monostate{},
                             std::monostate{}, std::monostate{},
                             std::monostate{}});
    }
    for (const auto& d : row.drops) {
      doc.records.push_back({std::string("drop"), cores, std::monostate{},
                             std::monostate{}, std::monostate{},
                             static_cast<std::int64_t>(d.k), d.gamma_before,
                             d.gamma_after});
    }
  }
  return doc;
}

ResultDocument document_for(const QtgaReport& report) {
  ResultDocument doc;
  doc.schema = "qtga";
  doc.columns = {"technology", "delta",   "fidelity", "quality_factor",
                 "n_cores",    "n_q",     "gamma"};
  for (const auto& entry : report.entries) {
    for (const auto& pt : entry.curve) {
      doc.records.push_back({entry.technology, entry.delta, entry.fidelity,
                             entry.quality_factor,
                             static_cast<std::int64_t>(pt.n_cores), pt.n_q,
                             pt.gamma});
    }
  }
  return doc;
}

ResultDocument document_for(const EquivalenceMatch& match) {
  ResultDocument doc;
  doc.schema = "equiv";
  doc.columns = {"role", "technology", "delta", "n_cores",
                 "n_q",  "gamma",      "rel_dev"};
  auto push = [&](const char* role, const EquivalenceEntry& e) {
    doc.records.push_back({std::string(role), e.technology, e.delta,
                           static_cast<std::int64_t>(e.n_cores), e.n_q,
                           e.gamma, e.rel_dev});
  };
  push("reference", match.reference);
  for (const auto& m : match.matches) push("match", m);
  return doc;
}

namespace {

std::string csv_field(const Field& f, int precision) {
  std::string raw;
  if (std::holds_alternative<std::monostate>(f)) {
    return "";
  } else if (std::holds_alternative<std::string>(f)) {
    raw = std::get<std::string>(f);
  } else if (std::holds_alternative<std::int64_t>(f)) {
    return std::to_string(std::get<std::int64_t>(f));
  } else {
    return format_double(std::get<double>(f), precision);
  }
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char ch : raw) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string emit_csv(const ResultDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += doc.columns[i];
  }
  out += '\n';
  for (const auto& rec : doc.records) {
    if (rec.size() != doc.columns.size())
      throw IoError("record width does not match column count");
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(rec[i], doc.provenance.precision);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const ResultDocument& doc) {
  ordered_json root;
  ordered_json prov;
  prov["tool"] = doc.provenance.tool;
  prov["version"] = doc.provenance.version;
  prov["config_hash"] = doc.provenance.config_hash;
  prov["catalog_hash"] = doc.provenance.catalog_hash;
  prov["timestamp"] = doc.provenance.timestamp;
  prov["precision"] = doc.provenance.precision;
  root["provenance"] = std::move(prov);
  root["schema"] = doc.schema;
  root["columns"] = doc.columns;
  ordered_json records = ordered_json::array();
  for (const auto& rec : doc.records) {
    if (rec.size() != doc.columns.size())
      throw IoError("record width does not match column count");
    ordered_json obj;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const Field& f = rec[i];
      if (std::holds_alternative<std::monostate>(f))
        obj[doc.columns[i]] = nullptr;
      else if (std::holds_alternative<std::string>(f))
        obj[doc.columns[i]] = std::get<std::string>(f);
      else if (std::holds_alternative<std::int64_t>(f))
        obj[doc.columns[i]] = std::get<std::int64_t>(f);
      else
        obj[doc.columns[i]] =
            quantize(std::get<double>(f), doc.provenance.precision);
    }
    records.push_back(std::move(obj));
  }
  root["records"] = std::move(records);
  return root.dump(2) + "\n";
}

}  // namespace

std::string emit(const ResultDocument& doc, OutputFormat format) {
  return format == OutputFormat::Csv ? emit_csv(doc) : emit_json(doc);
}

ResultDocument parse_result_document(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("result document: malformed JSON: ") +
                      e.what());
  }
  if (!root.is_object())
    throw ConfigError("result document must be a JSON object");

  ResultDocument doc;
  const json* prov = find(root, "provenance");
  if (!prov || !prov->is_object())
    throw ConfigError("result document: missing provenance object");
  auto prov_str = [&](const char* key) {
    const json* v = find(*prov, key);
    if (!v || !v->is_string())
      throw ConfigError(std::string("result document: provenance.") + key +
                        " must be a string");
    return v->get<std::string>();
  };
  doc.provenance.tool = prov_str("tool");
  doc.provenance.version = prov_str("version");
  doc.provenance.config_hash = prov_str("config_hash");
  doc.provenance.catalog_hash = prov_str("catalog_hash");
  doc.provenance.timestamp = prov_str("timestamp");
  const json* prec = find(*prov, "precision");
  if (!prec || !prec->is_number_integer())
    throw ConfigError("result document: provenance.precision must be an "
                      "integer");
  doc.provenance.precision = prec->get<int>();

  const json* schema = find(root, "schema");
  if (!schema || !schema->is_string())
    throw ConfigError("result document: schema must be a string");
  doc.schema = schema->get<std::string>();

  const json* columns = find(root, "columns");
  if (!columns || !columns->is_array())
    throw ConfigError("result document: columns must be an array");
  for (const auto& c : *columns) {
    if (!c.is_string())
      throw ConfigError("result document: column names must be strings");
    doc.columns.push_back(c.get<std::string>());
  }

  const json* records = find(root, "records");
  if (!records || !records->is_array())
    throw ConfigError("result document: records must be an array");
  for (const auto& rec : *records) {
    if (!rec.is_object())
      throw ConfigError("result document: records must be objects");
    std::vector<Field> row;
    for (const auto& col : doc.columns) {
      const auto it = rec.find(col);
      if (it == rec.end())
        throw ConfigError("result document: record missing column '" + col +
                          "'");
      const json& v = *it;
      if (v.is_null())
        row.emplace_back(std::monostate{});
      else if (v.is_string())
        row.emplace_back(v.get<std::string>());
      else if (v.is_number_integer() || v.is_number_unsigned())
        row.emplace_back(v.get<std::int64_t>());
      else if (v.is_number_float())
        row.emplace_back(v.get<double>());
      else
        throw ConfigError("result document: unsupported value type in column "
                          "'" + col + "'");
    }
    doc.records.push_back(std::move(row));
  }
  return doc;
}

namespace {

MeritWeights parse_weights(const json& v) {
  const json& obj = as_obj(v, "scenario.weights");
  MeritWeights w;
  auto read = [&](const char* key, double& slot) {
    if (const json* f = find(obj, key)) {
      const std::string path = std::string("scenario.weights.") + key;
      slot = as_num(*f, path);
      if (!(slot > 0.0) || !(slot <= 1.0))
        throw ConfigError("config " + path + " must be in (0, 1], got " +
                          num(slot));
    }
  };
  read("qb", w.qb);
  read("qf", w.qf);
  read("f", w.f);
  read("i", w.i);
  read("c", w.c);
  return w;
}

ScenarioConfig parse_scenario(const json& v) {
  const json& obj = as_obj(v, "scenario");
  ScenarioConfig sc;
  auto positive = [&](const char* key, const char* what) {
    const double x = as_num(*find(obj, key), std::string("scenario.") + key);
    if (!(x > 0.0) || !std::isfinite(x))
      throw ConfigError(std::string("config scenario.") + key + " must be " +
                        what + ", got " + num(x));
    return x;
  };
  if (find(obj, "fidelity")) {
    const double f = as_num(*find(obj, "fidelity"), "scenario.fidelity");
    if (!(f > 0.0) || !(f <= 1.0))
      throw ConfigError("config scenario.fidelity must be in (0, 1], got " +
                        num(f));
    sc.fidelity = f;
  }
  if (find(obj, "quality_factor"))
    sc.quality_factor = positive("quality_factor", "finite and > 0");
  if (find(obj, "tau_c_s")) sc.tau_c_s = positive("tau_c_s", "finite and > 0");
  if (find(obj, "gate_latency_s"))
    sc.gate_latency_s = positive("gate_latency_s", "finite and > 0");
  if (const json* f = find(obj, "eps_i")) {
    sc.eps_i = as_num(*f, "scenario.eps_i");
    if (!(sc.eps_i >= 0.0) || !std::isfinite(sc.eps_i))
      throw ConfigError("config scenario.eps_i must be >= 0, got " +
                        num(sc.eps_i));
  }
  if (const json* f = find(obj, "eps_c")) {
    sc.eps_c = as_num(*f, "scenario.eps_c");
    if (!(sc.eps_c >= 0.0) || !(sc.eps_c < 1.0))
      throw ConfigError("config scenario.eps_c must be in [0, 1), got " +
                        num(sc.eps_c));
  }
  if (const json* f = find(obj, "n_q_lim")) {
    sc.n_q_lim = as_int(*f, "scenario.n_q_lim");
    if (sc.n_q_lim < 1)
      throw ConfigError("config scenario.n_q_lim must be >= 1, got " +
                        std::to_string(sc.n_q_lim));
  }
  if (const json* f = find(obj, "n_q_norm")) {
    sc.n_q_norm = as_int(*f, "scenario.n_q_norm");
    if (*sc.n_q_norm < 2)
      throw ConfigError("config scenario.n_q_norm must be >= 2, got " +
                        std::to_string(*sc.n_q_norm));
  }
  if (const json* f = find(obj, "norm_mode")) {
    const std::string mode = as_str(*f, "scenario.norm_mode");
    if (mode == "linear")
      sc.norm_mode = NormMode::Linear;
    else if (mode == "log")
      sc.norm_mode = NormMode::Log;
    else
      throw ConfigError("config scenario.norm_mode must be linear or log, "
                        "got '" + mode + "'");
  }
  if (const json* f = find(obj, "weights")) sc.weights = parse_weights(*f);
  return sc;
}

std::vector<double> parse_num_array(const json& v, const std::string& path) {
  const json& arr = as_arr(v, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(as_num(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> parse_int_array(const json& v, const std::string& path) {
  const json& arr = as_arr(v, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(static_cast<int>(
        as_int(arr[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

NQAxisSpec parse_n_q_axis(const json& v, const std::string& path) {
  if (v.is_array()) {
    std::vector<std::int64_t> xs;
    for (std::size_t i = 0; i < v.size(); ++i)
      xs.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    return xs;
  }
  const json& obj = as_obj(v, path);
  LogAxisSpec ls;
  const json* min = find(obj, "min");
  const json* max = find(obj, "max");
  const json* points = find(obj, "points");
  if (!min || !max || !points)
    throw ConfigError("config " + path + " needs min, max, and points");
  ls.min = as_num(*min, path + ".min");
  ls.max = as_num(*max, path + ".max");
  ls.points = static_cast<int>(as_int(*points, path + ".points"));
  return ls;
}

std::vector<Constraint> parse_constraints(const json& v) {
  const json& arr = as_arr(v, "sweep.constraints");
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "sweep.constraints[" + std::to_string(i) + "]";
    const json& obj = as_obj(arr[i], path);
    Constraint c;
    const json* expr = find(obj, "expr");
    if (!expr) throw ConfigError("config " + path + " needs an expr");
    c.expr = constraint_expr_from_name(as_str(*expr, path + ".expr"));
    if (const json* kind = find(obj, "kind")) {
      const std::string k = as_str(*kind, path + ".kind");
      if (k == "inequality")
        c.kind = ConstraintKind::Inequality;
      else if (k == "equality")
        c.kind = ConstraintKind::Equality;
      else
        throw ConfigError("config " + path +
                          ".kind must be inequality or equality, got '" + k +
                          "'");
    }
    if (const json* bound = find(obj, "bound"))
      c.bound = as_num(*bound, path + ".bound");
    out.push_back(c);
  }
  return out;
}

SweepConfig parse_sweep(const json& v) {
  const json& obj = as_obj(v, "sweep");
  SweepConfig sw;
  if (const json* f = find(obj, "technology"))
    sw.technology = as_str(*f, "sweep.technology");
  if (const json* f = find(obj, "delta_axis"))
    sw.delta_axis = parse_num_array(*f, "sweep.delta_axis");
  if (const json* f = find(obj, "n_q_axis"))
    sw.n_q_axis = parse_n_q_axis(*f, "sweep.n_q_axis");
  if (const json* f = find(obj, "n_cores_axis"))
    sw.n_cores_axis = parse_int_array(*f, "sweep.n_cores_axis");
  if (const json* f = find(obj, "constraints"))
    sw.constraints = parse_constraints(*f);
  return sw;
}

QtgaMode parse_qtga_mode(const json& obj) {
  QtgaMode mode;
  if (const json* f = find(obj, "mode")) {
    const std::string m = as_str(*f, "analysis.qtga.mode");
    if (m == "fixed_cores")
      mode.kind = QtgaMode::Kind::FixedCores;
    else if (m == "peak_per_cores")
      mode.kind = QtgaMode::Kind::PeakPerCores;
    else
      throw ConfigError("config analysis.qtga.mode must be fixed_cores or "
                        "peak_per_cores, got '" + m + "'");
  }
  if (const json* f = find(obj, "fixed_cores")) {
    mode.fixed_cores =
        static_cast<int>(as_int(*f, "analysis.qtga.fixed_cores"));
    if (mode.fixed_cores < 1)
      throw ConfigError("config analysis.qtga.fixed_cores must be >= 1, got " +
                        std::to_string(mode.fixed_cores));
  }
  return mode;
}

AnalysisConfig parse_analysis(const json& v) {
  const json& obj = as_obj(v, "analysis");
  AnalysisConfig an;
  if (const json* f = find(obj, "isoline_levels"))
    an.isoline_levels = parse_num_array(*f, "analysis.isoline_levels");
  if (const json* f = find(obj, "isoline_tol_rel")) {
    an.isoline_tol_rel = as_num(*f, "analysis.isoline_tol_rel");
    if (!(an.isoline_tol_rel > 0.0) || !(an.isoline_tol_rel < 1.0))
      throw ConfigError("config analysis.isoline_tol_rel must be in (0, 1), "
                        "got " + num(an.isoline_tol_rel));
  }
  if (const json* f = find(obj, "qtga")) {
    const json& q = as_obj(*f, "analysis.qtga");
    an.qtga_mode = parse_qtga_mode(q);
    if (const json* d = find(q, "deltas"))
      an.delta_list = parse_num_array(*d, "analysis.qtga.deltas");
    if (const json* t = find(q, "technologies")) {
      const json& arr = as_arr(*t, "analysis.qtga.technologies");
      for (std::size_t i = 0; i < arr.size(); ++i)
        an.technologies.push_back(as_str(
            arr[i], "analysis.qtga.technologies[" + std::to_string(i) + "]"));
    }
  }
  if (const json* f = find(obj, "point")) {
    const json& p = as_obj(*f, "analysis.point");
    DesignPoint pt;
    const json* n_q = find(p, "n_q");
    const json* n_cores = find(p, "n_cores");
    if (!n_q || !n_cores)
      throw ConfigError("config analysis.point needs n_q and n_cores");
    pt.n_q = as_int(*n_q, "analysis.point.n_q");
    pt.n_cores = static_cast<int>(as_int(*n_cores, "analysis.point.n_cores"));
    if (pt.n_q < 1)
      throw ConfigError("config analysis.point.n_q must be >= 1, got " +
                        std::to_string(pt.n_q));
    if (pt.n_cores < 1)
      throw ConfigError("config analysis.point.n_cores must be >= 1, got " +
                        std::to_string(pt.n_cores));
    an.point = pt;
  }
  if (const json* f = find(obj, "equivalence")) {
    const json& e = as_obj(*f, "analysis.equivalence");
    EquivSpec eq;
    if (const json* x = find(e, "delta_a"))
      eq.delta_a = as_num(*x, "analysis.equivalence.delta_a");
    if (const json* x = find(e, "delta_b"))
      eq.delta_b = as_num(*x, "analysis.equivalence.delta_b");
    const json* n_cores = find(e, "n_cores");
    const json* n_q = find(e, "n_q");
    if (!n_cores || !n_q)
      throw ConfigError("config analysis.equivalence needs n_cores and n_q");
    eq.n_cores =
        static_cast<int>(as_int(*n_cores, "analysis.equivalence.n_cores"));
    eq.n_q = as_int(*n_q, "analysis.equivalence.n_q");
    if (const json* x = find(e, "tol_rel")) {
      eq.tol_rel = as_num(*x, "analysis.equivalence.tol_rel");
      if (!(eq.tol_rel >= 0.0) || !(eq.tol_rel <= 0.5))
        throw ConfigError("config analysis.equivalence.tol_rel must be in "
                          "[0, 0.5], got " + num(eq.tol_rel));
    }
    an.equivalence = eq;
  }
  return an;
}

OutputConfig parse_output(const json& v) {
  const json& obj = as_obj(v, "output");
  OutputConfig oc;
  if (const json* f = find(obj, "format"))
    oc.format = output_format_from_name(as_str(*f, "output.format"));
  if (const json* f = find(obj, "precision")) {
    oc.precision = static_cast<int>(as_int(*f, "output.precision"));
    if (oc.precision < 1 || oc.precision > 17)
      throw ConfigError("config output.precision must be in [1, 17], got " +
                        std::to_string(oc.precision));
  }
  if (const json* f = find(obj, "path"))
    oc.path = as_str(*f, "output.path");
  return oc;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig rc;
  if (const json* f = find(doc, "catalog"))
    rc.catalog_path = as_str(*f, "catalog");
  if (const json* f = find(doc, "scenario")) rc.scenario = parse_scenario(*f);
  if (const json* f = find(doc, "sweep")) rc.sweep = parse_sweep(*f);
  if (const json* f = find(doc, "analysis")) rc.analysis = parse_analysis(*f);
  if (const json* f = find(doc, "output")) rc.output = parse_output(*f);
  return rc;
}

bool scenario_sets_source(const ScenarioConfig& sc) {
  return sc.fidelity.has_value() || sc.quality_factor.has_value() ||
         sc.tau_c_s.has_value() || sc.gate_latency_s.has_value();
}

Scenario scenario_skeleton(const ScenarioConfig& sc,
                           std::int64_t n_q_norm_default) {
  Scenario s;
  s.eps_i = sc.eps_i;
  s.eps_c = sc.eps_c;
  s.n_q_lim = sc.n_q_lim;
  s.weights = sc.weights;
  s.n_q_norm = sc.n_q_norm.value_or(n_q_norm_default);
  s.norm_mode = sc.norm_mode;
  s.fidelity = 1.0;
  s.quality_factor = 1.0;
  return s;
}

Scenario resolve_scenario(const ScenarioConfig& sc,
                          const TechnologyProfile* tech,
                          std::int64_t n_q_norm_default) {
  Scenario s = scenario_skeleton(sc, n_q_norm_default);
  if (tech) {
    if (scenario_sets_source(sc))
      throw ConfigError(
          "scenario fidelity and quality factor come from the selected "
          "technology; remove scenario.fidelity, scenario.quality_factor, "
          "scenario.tau_c_s, and scenario.gate_latency_s");
    s.fidelity = tech->fidelity;
    s.quality_factor = tech->quality_factor;
    return s;
  }
  if (!sc.fidelity)
    throw ConfigError(
        "scenario.fidelity is required when no technology is selected");
  s.fidelity = *sc.fidelity;
  const bool has_qf = sc.quality_factor.has_value();
  const bool has_timing =
      sc.tau_c_s.has_value() || sc.gate_latency_s.has_value();
  if (has_qf && has_timing)
    throw ConfigError(
        "scenario.quality_factor and scenario timing fields are mutually "
        "exclusive");
  if (has_qf) {
    s.quality_factor = *sc.quality_factor;
  } else {
    if (!sc.tau_c_s.has_value() || !sc.gate_latency_s.has_value())
      throw ConfigError(
          "scenario needs quality_factor or both tau_c_s and gate_latency_s");
    s.quality_factor = quality_factor(*sc.tau_c_s, *sc.gate_latency_s);
  }
  return s;
}

}  // namespace qdse
