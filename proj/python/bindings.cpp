#include "worldsheet/gauges.hpp"
#include "worldsheet/scenario.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace worldsheet;

namespace {

// nlohmann::json -> Python objects, through the json module (reports are small).
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::array_t<double> to_array(const std::vector<Vec>& pts) {
  const py::ssize_t n = static_cast<py::ssize_t>(pts.size()), d = pts.empty() ? 0 : pts.front().size();
  py::array_t<double> out({n, d});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t k = 0; k < d; ++k) r(i, k) = pts[i][k];
  return out;
}

std::vector<double> to_list(const Vec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Extremal timelike surfaces from orthogonal gauges";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<io::SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<OrthogonalGauge>(m, "Gauge")
      .def_property_readonly("dim", &OrthogonalGauge::dim)
      .def_readonly("E0", &OrthogonalGauge::E0)
      .def_readonly("periodic", &OrthogonalGauge::periodic)
      .def_readonly("name", &OrthogonalGauge::name)
      .def("gamma", [](const OrthogonalGauge& g, double t, double x) { return to_list(gamma(g, t, x)); })
      .def("derivatives",
           [](const OrthogonalGauge& g, double t, double x) {
             const auto d = derivatives(g, t, x);
             return py::make_tuple(to_list(d.gamma_x), to_list(d.gamma_t));
           })
      .def("metric_det", [](const OrthogonalGauge& g, double t, double x) { return metric_det(g, t, x); })
      .def("slice", [](const OrthogonalGauge& g, double t, int m) { return to_array(slice(g, t, m).points); },
           py::arg("t"), py::arg("m") = 512)
      .def("__repr__", [](const OrthogonalGauge& g) {
        return "<Gauge " + g.name + " dim=" + std::to_string(g.dim()) + " E0=" + std::to_string(g.E0) + ">";
      });

  m.def("circle", &gauges::circle, py::arg("dim") = 2);
  m.def("hopf", &gauges::hopf, py::arg("mirrored") = false);
  m.def("full_slice", &gauges::full_slice);
  m.def("nonconvex", &gauges::nonconvex, py::arg("amplitude") = 0.8);
  m.def("oval", &gauges::oval, py::arg("eps") = 0.2);
  m.def("random_fourier", &gauges::random_fourier, py::arg("dim"), py::arg("seed"));
  m.def("perturbed_circle", &gauges::perturbed_circle, py::arg("seed"), py::arg("eps") = 0.15);
  m.def("meridian_loops", &gauges::meridian_loops);
  m.def("two_crossings", &gauges::two_crossings, py::arg("tilt") = kPi / 3);
  m.def("gauge_from_spec", [](const py::object& spec, std::uint64_t seed) { return io::gauge_from_json(from_py(spec), seed); },
        py::arg("spec"), py::arg("seed") = 1, "Gauge from a scenario-style description dict.");
  m.def("sharp_cantor_gauge", [](int k, int depth, int m_) { return sharp_example_gauge(CantorSpec::make(k, depth, m_)).gauge; },
        py::arg("k") = 1, py::arg("depth") = 8, py::arg("m") = 8);
  m.def("perturb", &perturb_gauge, py::arg("gauge"), py::arg("epsilon"), py::arg("seed"), py::arg("modes") = 8);

  m.def("constraint_residuals",
        [](const OrthogonalGauge& g, int nt, int nx, double h) { return to_py(io::to_json(constraint_residuals(g, nt, nx, h))); },
        py::arg("gauge"), py::arg("nt") = 200, py::arg("nx") = 200, py::arg("h") = 1e-3);
  m.def("find_antipodal_pairs",
        [](const OrthogonalGauge& g, int grid_n, double tol, bool classify) {
          DetectOptions opt;
          opt.grid_n = grid_n;
          opt.tol = tol;
          py::gil_scoped_release release;
          auto rep = find_antipodal_pairs(g, opt);
          if (classify) classify_all(g, rep);
          py::gil_scoped_acquire acquire;
          return to_py(io::to_json(rep));
        },
        py::arg("gauge"), py::arg("grid_n") = 512, py::arg("tol") = -1.0, py::arg("classify") = true);
  m.def("is_global_immersion",
        [](const OrthogonalGauge& g, int grid_n) {
          const auto r = is_global_immersion(g, grid_n);
          return py::make_tuple(r.immersed, r.margin);
        },
        py::arg("gauge"), py::arg("grid_n") = 512);
  m.def("sing_star_time_extent",
        [](const OrthogonalGauge& g, int nt, int nx) { return to_py(io::to_json(sing_star_time_extent(g, nt, nx))); },
        py::arg("gauge"), py::arg("nt") = 512, py::arg("nx") = 2048);
  m.def("winding_number", [](const OrthogonalGauge& g, int m_) { return winding_number(diagram(g, m_)); },
        py::arg("gauge"), py::arg("samples") = 1024);
  m.def("linking_number", [](const OrthogonalGauge& g, int m_) { return linking_number(diagram(g, m_)); },
        py::arg("gauge"), py::arg("samples") = 1024);
  m.def("transversal_count", &transversal_count, py::arg("gauge"), py::arg("grid_n") = 512);
  m.def("genericity_probe",
        [](const OrthogonalGauge& g, double epsilon, int trials, unsigned seed) {
          PerturbationOptions opt;
          opt.epsilon = epsilon;
          opt.trials = trials;
          opt.seed = seed;
          return to_py(io::to_json(genericity_probe(g, opt)));
        },
        py::arg("gauge"), py::arg("epsilon") = 0.05, py::arg("trials") = 50, py::arg("seed") = 1);

  m.def("box_count",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> points, std::vector<double> scales,
           bool normalize_axes) {
          if (points.ndim() != 2 || points.shape(1) < 1 || points.shape(1) > kMaxDim)
            throw PreconditionError("points must be an (N, d) array with 1 <= d <= 6");
          PointCloud cloud;
          auto r = points.unchecked<2>();
          for (py::ssize_t i = 0; i < r.shape(0); ++i) {
            Vec v(r.shape(1));
            for (py::ssize_t k = 0; k < r.shape(1); ++k) v[k] = r(i, k);
            cloud.points.push_back(v);
          }
          BoxOptions opt;
          opt.normalize_axes = normalize_axes;
          return to_py(io::to_json(box_count(cloud, scales, opt)));
        },
        py::arg("points"), py::arg("scales"), py::arg("normalize_axes") = false);
  m.def("dyadic_ladder", &dyadic_ladder, py::arg("lo") = 3, py::arg("hi") = 9);
  m.def("sharp_cantor_dimension",
        [](int k, int depth, int m_) {
          const auto ex = sharp_example_gauge(CantorSpec::make(k, depth, m_));
          BoxOptions opt;
          opt.normalize_axes = true;
          return to_py(io::to_json(box_count(singstar_cloud(ex), dyadic_ladder(), opt)));
        },
        py::arg("k") = 1, py::arg("depth") = 8, py::arg("m") = 8);
  m.def("nonuniqueness_distances",
        [](std::vector<double> times, int n, double delta, bool same_surface) {
          const auto p = same_surface ? same_surface_family(n, delta) : nonuniqueness_pair(n, delta);
          std::vector<double> out;
          for (double t : times) out.push_back(slice_distance(p.id, p.pi, t));
          return out;
        },
        py::arg("times"), py::arg("n") = 3, py::arg("delta") = 0.05, py::arg("same_surface") = false);

  m.def("run_scenario",
        [](const py::object& scenario, int grid, double tol, std::optional<std::uint64_t> seed) {
          RunSettings s;
          s.grid = grid;
          s.tol = tol;
          s.seed = seed;
          const auto result = run_scenario(parse_scenario(from_py(scenario)), s);
          return py::make_tuple(result.exit_code, to_py(result.report));
        },
        py::arg("scenario"), py::arg("grid") = 512, py::arg("tol") = 1e-8, py::arg("seed") = py::none(),
        "Runs a scenario dict; returns (exit_code, report).");
}
