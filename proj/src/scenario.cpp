#include "worldsheet/scenario.hpp"

#include "worldsheet/parallel.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>

namespace worldsheet {

using nlohmann::json;

namespace {

template <class T>
T param(const json& p, const char* key, T fallback) {
  if (!p.contains(key)) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const json::exception& e) {
    throw io::SchemaError(std::string("parameter '") + key + "': " + e.what());
  }
}

struct Context {
  const Scenario& sc;
  const RunSettings& settings;
  RunResult& out;
  std::uint64_t seed() const {
    if (settings.seed) return *settings.seed;
    if (sc.seed) return *sc.seed;
    return 1;
  }
  int grid() const { return param(sc.params, "grid", settings.grid); }
  OrthogonalGauge gauge() const { return io::gauge_from_json(sc.gauge, seed()); }
  void flag(const std::string& why) { out.flags.push_back(why); }
};

json gauge_summary(const OrthogonalGauge& g) {
  return {{"name", g.name}, {"dim", g.dim()}, {"E0", g.E0}, {"periodic", g.periodic},
          {"a", g.a.name()}, {"b", g.b.name()}};
}

void task_evolve(Context& c) {
  const auto g = c.gauge();
  std::vector<double> times = param(c.sc.params, "times", std::vector<double>{});
  if (times.empty()) {
    const int nt = param(c.sc.params, "nt", 9);
    if (nt < 2) throw io::SchemaError("evolve: nt must be >= 2");
    for (int i = 0; i < nt; ++i) times.push_back(0.5 * g.E0 * i / (nt - 1));
  }
  const int m = param(c.sc.params, "samples", 512);
  json slices = json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto s = slice(g, times[i], m);
    double rmin = INFINITY, rmax = 0.0;
    for (const auto& p : s.points) {
      rmin = std::min(rmin, p.norm());
      rmax = std::max(rmax, p.norm());
    }
    slices.push_back({{"t", s.t}, {"min_radius", rmin}, {"max_radius", rmax}, {"closure_gap", s.closure_gap}});
    c.out.tables.emplace_back("slice_" + std::to_string(i), io::slice_table(s));
  }
  c.out.report["slices"] = slices;
  if (param(c.sc.params, "constraints", true)) {
    const auto cr = constraint_residuals(g, 200, 200, 1e-3, c.settings.threads);
    c.out.report["constraints"] = io::to_json(cr);
    if (!cr.second_order) c.flag("wave residual is not second order");
  }
}

void task_detect(Context& c) {
  const auto g = c.gauge();
  DetectOptions opt;
  opt.grid_n = c.grid();
  opt.tol = param(c.sc.params, "tol", c.settings.tol);
  opt.threads = c.settings.threads;
  auto rep = find_antipodal_pairs(g, opt);
  classify_all(g, rep);
  const auto imm = is_global_immersion(g, opt.grid_n);
  c.out.report["detect"] = io::to_json(rep);
  c.out.report["immersed"] = imm.immersed;
  c.out.report["margin"] = imm.margin;
  if (g.dim() == 2 && param(c.sc.params, "time_extent", false)) {
    c.out.report["time_extent"] = io::to_json(sing_star_time_extent(g));
  }
  io::Table pts{{"t", "x", "s", "sigma", "residual"}, {}};
  for (const auto& p : rep.pairs) pts.rows.push_back({p.t, p.x, p.s, p.sigma, p.residual});
  c.out.tables.emplace_back("pairs", pts);
  for (const auto& w : rep.warnings) c.flag(w);
}

void task_diagram(Context& c) {
  const auto g = c.gauge();
  const auto d = diagram(g, param(c.sc.params, "samples", 1024));
  c.out.report["diagram"] = {{"dim", d.dim}, {"min_distance", d.min_distance}, {"disjoint", d.disjoint},
                             {"s_min", d.s_min}, {"sigma_min", d.sigma_min}};
  c.out.tables.emplace_back("curve_a", io::curve_table(d.curve_a, "a"));
  c.out.tables.emplace_back("curve_mb", io::curve_table(d.curve_mb, "mb"));
  if (d.disjoint && d.dim == 3) {
    const auto w = winding_report(d);
    c.out.report["winding"] = {{"winding", w.winding}, {"raw", w.raw}, {"second_winding", w.second_winding},
                               {"center", io::to_json(w.center)}, {"second_center", io::to_json(w.second_center)}};
  } else if (d.disjoint && d.dim == 4) {
    const auto l = linking_report(d);
    c.out.report["linking"] = {{"linking", l.linking}, {"integral", l.integral}, {"residual", l.residual},
                               {"center", io::to_json(l.center)}};
  }
  if (d.dim == 3 && param(c.sc.params, "transversal", false)) {
    c.out.report["transversal_count"] = transversal_count(g, c.grid());
  }
}

void task_dimension(Context& c) {
  const auto ladder = param(c.sc.params, "ladder", std::vector<int>{3, 9});
  if (ladder.size() != 2) throw io::SchemaError("dimension: ladder is [lo, hi]");
  BoxOptions opt;
  PointCloud cloud;
  if (c.sc.gauge.value("builder", "") == "sharp_cantor") {
    const auto& j = c.sc.gauge;
    const auto spec = CantorSpec::make(j.value("k", 1), j.value("depth", 8), j.value("m", 8));
    const auto ex = sharp_example_gauge(spec, j.value("t_samples", 4097));
    cloud = singstar_cloud(ex);
    opt.normalize_axes = param(c.sc.params, "normalize_axes", true);
    c.out.report["target"] = 1.0 + spec.mu;
  } else {
    cloud = singstar_cloud(c.gauge(), c.grid());
    opt.normalize_axes = param(c.sc.params, "normalize_axes", false);
  }
  const auto s = box_count(cloud, dyadic_ladder(ladder[0], ladder[1]), opt);
  c.out.report["cloud"] = {{"points", cloud.points.size()}, {"provenance", cloud.provenance}};
  c.out.report["estimate"] = io::to_json(s);
  if (param(c.sc.params, "write_cloud", false)) c.out.tables.emplace_back("cloud", io::cloud_table(cloud));
  if (!s.reliable) c.flag("unreliable slope (r2 < 0.98)");
}

void task_probe(Context& c) {
  if (!c.sc.seed && !c.settings.seed) throw io::SchemaError("probe is stochastic: a seed is required");
  PerturbationOptions opt;
  opt.epsilon = param(c.sc.params, "epsilon", 0.05);
  opt.trials = param(c.sc.params, "trials", 50);
  opt.modes = param(c.sc.params, "modes", 8);
  opt.grid_n = param(c.sc.params, "grid", 256);
  opt.seed = static_cast<unsigned>(c.seed());
  opt.threads = c.settings.threads;
  const auto r = genericity_probe(c.gauge(), opt);
  c.out.report["probe"] = io::to_json(r);
  io::Table t{{"trial", "margin"}, {}};
  for (std::size_t i = 0; i < r.margins.size(); ++i) t.rows.push_back({static_cast<double>(i), r.margins[i]});
  c.out.tables.emplace_back("margins", t);
  if (r.discarded > 0) c.flag(std::to_string(r.discarded) + " perturbations discarded");
}

void task_nonuniq(Context& c) {
  const int n = param(c.sc.params, "n", 3);
  const double delta = param(c.sc.params, "delta", 0.05);
  const bool same = param(c.sc.params, "same_surface", false);
  const auto pair = same ? same_surface_family(n, delta) : nonuniqueness_pair(n, delta);
  const int m = param(c.sc.params, "samples", 3072);
  std::vector<double> times = param(c.sc.params, "times", std::vector<double>{});
  if (times.empty()) {
    if (same) {
      for (int i = 0; i < 32; ++i) times.push_back(3.0 * i / 32);
    } else {
      for (int i = 0; i < 8; ++i) times.push_back(delta * i / 7);
      times.push_back(0.5);
    }
  }
  io::Table t{{"t", "slice_distance"}, {}};
  json rows = json::array();
  for (double time : times) {
    const double d = slice_distance(pair.id, pair.pi, time, m);
    t.rows.push_back({time, d});
    rows.push_back({{"t", time}, {"distance", d}});
  }
  c.out.tables.emplace_back("slice_distance", t);
  const auto i1 = is_global_immersion(pair.id, c.grid()), i2 = is_global_immersion(pair.pi, c.grid());
  c.out.report["nonuniq"] = {{"same_surface", same}, {"delta", delta}, {"distances", rows},
                             {"id_immersed", i1.immersed}, {"pi_immersed", i2.immersed},
                             {"id_margin", i1.margin}, {"pi_margin", i2.margin}};
  c.out.tables.emplace_back("slice_id_half", io::slice_table(slice(pair.id, 0.5, 1536)));
  c.out.tables.emplace_back("slice_pi_half", io::slice_table(slice(pair.pi, 0.5, 1536)));
}

void task_construct(Context& c) {
  const auto what = param<std::string>(c.sc.params, "construction", "");
  if (what == "sharp_cantor") {
    const auto spec = CantorSpec::make(param(c.sc.params, "k", 1), param(c.sc.params, "depth", 8),
                                       param(c.sc.params, "m", 8));
    const auto ex = sharp_example_gauge(spec, param(c.sc.params, "t_samples", 257));
    c.out.report["cantor"] = {{"k", spec.k}, {"m", spec.m}, {"depth", spec.depth}, {"mu", spec.mu},
                              {"nu", spec.nu}, {"alpha", spec.alpha}, {"beta", spec.beta},
                              {"scale", ex.f.scale()}, {"max_slope", ex.f.max_slope()},
                              {"sigma_points", ex.sigma.size()}, {"predicted_points", ex.predicted.size()}};
    c.out.report["gauge"] = gauge_summary(ex.gauge);
    io::Table f{{"x", "f", "df"}, {}};
    for (int i = 0; i <= 4096; ++i) {
      const double x = i / 4096.0;
      f.rows.push_back({x, ex.f(x), ex.f.eval(x, 1)});
    }
    c.out.tables.emplace_back("cantor_function", f);
    c.out.tables.emplace_back("predicted", io::cloud_table({ex.predicted, "predicted"}));
  } else if (what == "extinction") {
    if (!c.sc.params.contains("curve1") || !c.sc.params.contains("curve2"))
      throw io::SchemaError("extinction: curve1 and curve2 are required");
    const auto ep = extinction_pair(io::curve_from_json(c.sc.params["curve1"]), io::curve_from_json(c.sc.params["curve2"]));
    double vanish = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = ep.gauge1.E0 * i / 1000;
      vanish = std::max({vanish, gamma(ep.gauge1, ep.tbar, x).norm(), gamma(ep.gauge2, ep.tbar, x).norm()});
    }
    c.out.report["extinction"] = {{"tbar", ep.tbar}, {"max_norm_at_tbar", vanish}};
    io::Table s{{"x", "s"}, {}};
    for (int i = 0; i <= 512; ++i) {
      const double x = ep.gauge1.E0 * i / 512;
      s.rows.push_back({x, ep.s_map(x)});
    }
    c.out.tables.emplace_back("s_map", s);
  } else {
    throw io::SchemaError("construct: construction must be 'sharp_cantor' or 'extinction'");
  }
}

const std::map<std::string, std::function<void(Context&)>>& tasks() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"evolve", task_evolve},   {"detect", task_detect}, {"diagram", task_diagram},
      {"construct", task_construct}, {"dimension", task_dimension}, {"probe", task_probe},
      {"nonuniq", task_nonuniq}};
  return table;
}

bool needs_gauge(const std::string& task) { return task != "construct" && task != "nonuniq"; }

}  // namespace

std::vector<std::string> task_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : tasks()) out.push_back(name);
  return out;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw io::SchemaError("scenario must be a JSON object");
  static const std::vector<std::string> known{"schema_version", "name", "gauge", "task", "params", "output", "seed"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw io::SchemaError("unknown field '" + key + "'");
  }
  if (j.contains("schema_version") && j["schema_version"] != io::kSchemaVersion)
    throw io::SchemaError("unsupported schema_version");
  Scenario s;
  try {
    s.name = j.value("name", "scenario");
    s.task = j.at("task").get<std::string>();
    if (j.contains("gauge")) s.gauge = j["gauge"];
    if (j.contains("params")) s.params = j["params"];
    s.output = j.value("output", "");
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw io::SchemaError(std::string("scenario: ") + e.what());
  }
  if (!tasks().count(s.task)) throw io::SchemaError("unknown task '" + s.task + "'");
  if (!s.params.is_object()) throw io::SchemaError("params must be an object");
  if (needs_gauge(s.task) && !s.gauge.is_object()) throw io::SchemaError("task '" + s.task + "' needs a gauge");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io::SchemaError("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::SchemaError(path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

RunResult run_scenario(const Scenario& scenario, const RunSettings& settings) {
  RunResult out;
  Context c{scenario, settings, out};
  const int saved_threads = default_threads().load();
  default_threads() = settings.threads;
  out.report = {{"schema_version", io::kSchemaVersion}, {"name", scenario.name}, {"task", scenario.task},
                {"seed", c.seed()}, {"grid", c.grid()}, {"tol", settings.tol}};
  try {
    if (needs_gauge(scenario.task)) out.report["gauge"] = gauge_summary(c.gauge());
    tasks().at(scenario.task)(c);
    if (!out.flags.empty()) out.exit_code = kUnreliable;
  } catch (const io::SchemaError& e) {
    out.exit_code = kSchemaFailure;
    out.report["error"] = {{"kind", "schema"}, {"message", e.what()}};
  } catch (const PreconditionError& e) {
    out.exit_code = kPreconditionFailure;
    out.report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
  } catch (const NumericalError& e) {
    out.exit_code = kUnreliable;
    out.report["error"] = {{"kind", "numerical"}, {"message", e.what()}};
  }
  default_threads() = saved_threads;
  out.report["flags"] = out.flags;
  out.report["exit_code"] = out.exit_code;
  return out;
}

void write_artifacts(const RunResult& result, const std::filesystem::path& dir, double wall_seconds) {
  std::filesystem::create_directories(dir);
  io::write_json(result.report, dir / "report.json");
  for (const auto& [name, table] : result.tables) io::write_csv(table, dir / (name + ".csv"));
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  io::write_json({{"finished_at", stamp}, {"wall_seconds", wall_seconds}}, dir / "metadata.json");
}

}  // namespace worldsheet
