#include "worldsheet/io.hpp"

#include "worldsheet/gauges.hpp"

#include <fstream>
#include <functional>
#include <map>

namespace worldsheet::io {

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

Vec vec_from_json(const json& j, int dim = -1) {
  if (!j.is_array()) throw SchemaError("expected a numeric array");
  Vec v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  if (dim >= 0 && v.size() != dim) throw SchemaError("vector has the wrong length");
  return v;
}

unsigned seed_of(const json& j, std::uint64_t fallback) {
  return static_cast<unsigned>(get_or<std::uint64_t>(j, "seed", fallback));
}

using Builder = std::function<OrthogonalGauge(const json&, std::uint64_t)>;

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table{
      {"circle", [](const json& j, std::uint64_t) { return gauges::circle(get_or(j, "dim", 2)); }},
      {"hopf", [](const json& j, std::uint64_t) { return gauges::hopf(get_or(j, "mirrored", false)); }},
      {"full_slice", [](const json&, std::uint64_t) { return gauges::full_slice(); }},
      {"nonconvex", [](const json& j, std::uint64_t) { return gauges::nonconvex(get_or(j, "amplitude", 0.8)); }},
      {"oval", [](const json& j, std::uint64_t) { return gauges::oval(get_or(j, "eps", 0.2)); }},
      {"random_fourier",
       [](const json& j, std::uint64_t s) { return gauges::random_fourier(get_or(j, "dim", 2), seed_of(j, s)); }},
      {"perturbed_circle",
       [](const json& j, std::uint64_t s) { return gauges::perturbed_circle(seed_of(j, s), get_or(j, "eps", 0.15)); }},
      {"meridian_loops", [](const json&, std::uint64_t) { return gauges::meridian_loops(); }},
      {"two_crossings", [](const json& j, std::uint64_t) { return gauges::two_crossings(get_or(j, "tilt", kPi / 3)); }},
      {"sharp_cantor",
       [](const json& j, std::uint64_t) {
         const auto spec = CantorSpec::make(get_or(j, "k", 1), get_or(j, "depth", 8), get_or(j, "m", 8));
         return sharp_example_gauge(spec, get_or(j, "t_samples", 4097)).gauge;
       }},
      {"nonuniqueness",
       [](const json& j, std::uint64_t) {
         const int n = get_or(j, "n", 3);
         const double delta = get_or(j, "delta", 0.05);
         const auto pair = get_or(j, "same_surface", false) ? same_surface_family(n, delta) : nonuniqueness_pair(n, delta);
         const auto variant = get_or<std::string>(j, "variant", "id");
         if (variant != "id" && variant != "pi") throw SchemaError("nonuniqueness variant must be 'id' or 'pi'");
         return variant == "id" ? pair.id : pair.pi;
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> builder_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : builders()) out.push_back(name);
  return out;
}

UnitSpeedCurve curve_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind")) throw SchemaError("curve needs a 'kind'");
  const auto kind = spec.at("kind").get<std::string>();
  if (kind == "fourier_angle") {
    return UnitSpeedCurve::fourier_angle(
        get_or(spec, "period", kTwoPi), get_or(spec, "winding", 1), get_or(spec, "phase", 0.0),
        get_or(spec, "cos", std::vector<double>{}), get_or(spec, "sin", std::vector<double>{}),
        spec.contains("basepoint") ? vec_from_json(spec["basepoint"], 2) : Vec(Vec::Zero(2)));
  }
  if (kind == "circle") {
    const int dim = get_or(spec, "dim", 2);
    const Vec u = spec.contains("u") ? vec_from_json(spec["u"], dim) : unit_vector(dim, 0);
    const Vec v = spec.contains("v") ? vec_from_json(spec["v"], dim) : unit_vector(dim, 1);
    if (std::abs(u.norm() - 1) > 1e-12 || std::abs(v.norm() - 1) > 1e-12 || std::abs(u.dot(v)) > 1e-12)
      throw SchemaError("circle: u and v must be orthonormal");
    return UnitSpeedCurve::planar_circle(u, v, get_or(spec, "period", kTwoPi), get_or(spec, "phase", 0.0),
                                         spec.contains("basepoint") ? vec_from_json(spec["basepoint"], dim) : Vec(Vec::Zero(dim)),
                                         get_or(spec, "turns", 1));
  }
  if (kind == "sphere_path") {
    if (!spec.contains("samples") || !spec["samples"].is_array() || spec["samples"].size() < 4)
      throw SchemaError("sphere_path needs at least 4 samples");
    std::vector<Vec> samples;
    for (const auto& s : spec["samples"]) samples.push_back(vec_from_json(s));
    const int dim = static_cast<int>(samples.front().size());
    for (const auto& s : samples)
      if (s.size() != dim) throw SchemaError("sphere_path samples differ in length");
    return UnitSpeedCurve::sphere_path(samples, get_or(spec, "period", kTwoPi),
                                       spec.contains("basepoint") ? vec_from_json(spec["basepoint"], dim) : Vec(Vec::Zero(dim)));
  }
  throw SchemaError("unknown curve kind '" + kind + "'");
}

OrthogonalGauge gauge_from_json(const json& spec, std::uint64_t seed) {
  if (!spec.is_object()) throw SchemaError("gauge must be an object");
  if (spec.contains("builder")) {
    const auto name = spec.at("builder").get<std::string>();
    const auto it = builders().find(name);
    if (it == builders().end()) throw SchemaError("unknown builder '" + name + "'");
    return it->second(spec, seed);
  }
  if (spec.contains("a") && spec.contains("b")) {
    return make_gauge(curve_from_json(spec["a"]), curve_from_json(spec["b"]), get_or<std::string>(spec, "name", "inline"));
  }
  if (spec.contains("couple")) {
    const auto& c = spec["couple"];
    const auto kind = get_or<std::string>(c, "kind", "");
    AdmissibleCouple couple;
    if (kind == "circle") {
      couple = couple::circle(get_or(c, "radius", 1.0), get_or(c, "inward_speed", 0.0));
    } else if (kind == "random_fourier") {
      couple = couple::random_fourier(get_or(c, "modes", 3), seed_of(c, seed));
    } else {
      throw SchemaError("unknown couple kind '" + kind + "'");
    }
    const auto check = check_couple(couple);
    if (!check.admissible) throw PreconditionError("couple is not admissible");
    return gauge_from_couple(normalize(couple), get_or<std::string>(spec, "name", "couple"));
  }
  throw SchemaError("gauge needs 'builder', 'a' and 'b', or 'couple'");
}

json to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const SingularPair& p) {
  return {{"s", p.s}, {"sigma", p.sigma}, {"t", p.t}, {"x", p.x}, {"residual", p.residual}, {"point", to_json(p.point)}};
}

json to_json(const SingularityReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"kind", to_string(c.kind)},
                     {"sing_star", to_string(c.sing_star)},
                     {"pairs", c.pairs.size()},
                     {"t_min", c.t_min},
                     {"t_max", c.t_max},
                     {"tangent_gap", c.tangent_gap}});
  }
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(to_json(p));
  return {{"empty", r.empty()},     {"pair_count", r.pairs.size()}, {"min_residual", r.min_residual},
          {"eps_sing", r.eps_sing}, {"grid_n", r.grid_n},           {"warnings", r.warnings},
          {"components", comps},    {"pairs", pairs}};
}

json to_json(const ConstraintReport& r) {
  return {{"nt", r.nt},
          {"nx", r.nx},
          {"h", r.h},
          {"max_norm_residual", r.max_norm_residual},
          {"max_orthogonality_residual", r.max_orthogonality_residual},
          {"max_det_mismatch", r.max_det_mismatch},
          {"max_wave_residual", r.max_wave_residual},
          {"richardson_ratio", r.richardson_ratio},
          {"second_order", r.second_order}};
}

json to_json(const SlopeEstimate& s) {
  return {{"scales", s.scales}, {"counts", s.counts}, {"slope", s.slope},        {"intercept", s.intercept},
          {"r2", s.r2},         {"stderr", s.stderr_}, {"reliable", s.reliable}};
}

json to_json(const PerturbationReport& r) {
  return {{"epsilon", r.epsilon},       {"trials", r.trials},         {"smooth", r.smooth},
          {"singular", r.singular},     {"discarded", r.discarded},   {"margin_min", r.margin_min},
          {"margin_max", r.margin_max}, {"margin_mean", r.margin_mean}};
}

json to_json(const TimeExtent& e) {
  json iv = json::array();
  for (const auto& i : e.sing_star) iv.push_back({i.lo, i.hi});
  return {{"sing_star_intervals", iv}, {"full_slices", e.full_slices}, {"total_length", e.total_length()}};
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  out.precision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_json(const json& value, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

Table slice_table(const SliceCurve& s) {
  Table t;
  t.header = {"t", "x"};
  const int dim = s.points.empty() ? 0 : static_cast<int>(s.points.front().size());
  for (int d = 0; d < dim; ++d) t.header.push_back("gamma_" + std::to_string(d));
  t.header.push_back("radius");
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    std::vector<double> row{s.t, s.x[i]};
    for (int d = 0; d < dim; ++d) row.push_back(s.points[i][d]);
    row.push_back(s.points[i].norm());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table curve_table(const std::vector<Vec>& points, const std::string& prefix) {
  Table t;
  const int dim = points.empty() ? 0 : static_cast<int>(points.front().size());
  t.header.push_back("i");
  for (int d = 0; d < dim; ++d) t.header.push_back(prefix + "_" + std::to_string(d));
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double> row{static_cast<double>(i)};
    for (int d = 0; d < dim; ++d) row.push_back(points[i][d]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cloud_table(const PointCloud& cloud) {
  Table t;
  const int dim = cloud.points.empty() ? 0 : static_cast<int>(cloud.points.front().size());
  for (int d = 0; d < dim; ++d) t.header.push_back(d == 0 ? "t" : "gamma_" + std::to_string(d - 1));
  for (const auto& p : cloud.points) t.rows.emplace_back(p.data(), p.data() + p.size());
  return t;
}

}  // namespace worldsheet::io
