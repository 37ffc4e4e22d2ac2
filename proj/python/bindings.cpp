#include "admflux/analysis.hpp"
#include "admflux/catalog.hpp"
#include "admflux/curvature.hpp"
#include "admflux/errors.hpp"
#include "admflux/invariants.hpp"
#include "admflux/run.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace admflux;

namespace {

Vector optional_vector(const std::optional<Vector>& v) { return v ? *v : Vector(); }

py::dict report_dict(const ConvergenceReport& rep) {
  py::dict d;
  d["quantity"] = rep.quantity;
  d["radii"] = rep.radii;
  d["values"] = rep.values;
  d["orders"] = rep.orders;
  d["fitted_limit"] = rep.fitted_limit;
  d["fitted_rate"] = rep.fitted_rate;
  d["residual"] = rep.residual;
  d["tolerance"] = rep.tolerance;
  d["verdict"] = rep.verdict;
  d["mass_used"] = rep.mass_used;
  return d;
}

py::dict run_dict(const run::RunResult& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["functional"] = c.functional;
    d["verdict"] = c.verdict;
    d["required"] = c.required;
    d["tolerance"] = c.tolerance;
    d["fitted_limit"] = c.fitted_limit;
    d["fitted_rate"] = c.fitted_rate;
    d["max_abs"] = c.max_abs;
    d["note"] = c.note;
    checks.append(d);
  }
  py::dict out;
  out["exit_code"] = r.exit_code;
  out["error"] = r.error;
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ADM mass and center of mass of asymptotically flat metrics";

  py::register_exception<Error>(m, "AdmfluxError", PyExc_ValueError);

  py::class_<MetricField>(m, "MetricField")
      .def_property_readonly("dim", &MetricField::dim)
      .def_property_readonly("inner_radius", &MetricField::inner_radius)
      .def_property_readonly("name", [](const MetricField& f) { return f.info().name; })
      .def_property_readonly("expected_mass",
                             [](const MetricField& f) { return f.info().expected_mass; })
      .def_property_readonly("expected_center", [](const MetricField& f) {
        return f.info().expected_center;
      })
      .def("metric", [](const MetricField& f, const Vector& x) { return f.jet(x).g(); })
      .def("ricci", [](const MetricField& f, const Vector& x) { return ricci(f.jet(x)); })
      .def("scalar_curvature",
           [](const MetricField& f, const Vector& x) { return scalar_curvature(f.jet(x)); })
      .def("__repr__", [](const MetricField& f) {
        return "<MetricField " + f.info().name + " n=" + std::to_string(f.dim()) + ">";
      });

  m.def("flat", [](int n) { return catalog::build(catalog::flat_spec(n)); }, py::arg("n") = 3);
  m.def(
      "schwarzschild",
      [](double mass, int n, const std::optional<Vector>& center) {
        return catalog::build(catalog::schwarzschild_spec(n, mass, optional_vector(center)));
      },
      py::arg("mass") = 1.0, py::arg("n") = 3, py::arg("center") = py::none());
  m.def(
      "conformal",
      [](std::vector<double> coefficients, int n, const std::optional<Vector>& center) {
        return catalog::build(
            catalog::conformal_spec(n, std::move(coefficients), optional_vector(center)));
      },
      py::arg("coefficients"), py::arg("n") = 3, py::arg("center") = py::none());
  m.def("rt_violator", &catalog::rt_violator, py::arg("n") = 3, py::arg("amplitude") = 0.5);
  m.def(
      "field_from_config",
      [](const std::string& text) { return run::parse_config(text).metric.build(); },
      py::arg("config_json"));

  py::class_<QuadSurface>(m, "Surface")
      .def_readonly("dim", &QuadSurface::dim)
      .def_readonly("order", &QuadSurface::order)
      .def_readonly("nominal_radius", &QuadSurface::nominal_radius)
      .def_property_readonly("area", &QuadSurface::area)
      .def_property_readonly("node_count", [](const QuadSurface& s) { return s.nodes.size(); });
  m.def("sphere", &sphere_quadrature, py::arg("n"), py::arg("r"), py::arg("order") = 24);
  m.def("ellipsoid", &ellipsoid_quadrature, py::arg("semi_axes"), py::arg("order") = 24);

  m.def("adm_mass", &adm_mass_at, py::arg("field"), py::arg("surface"));
  m.def("intrinsic_mass", &intrinsic_mass_at, py::arg("field"), py::arg("surface"));
  m.def("cs_center", &cs_center_at, py::arg("field"), py::arg("surface"), py::arg("mass"));
  m.def("intrinsic_center", &intrinsic_center_at, py::arg("field"), py::arg("surface"),
        py::arg("mass"));
  m.def("ibp_residual_x", &ibp_residual_X, py::arg("field"), py::arg("surface"));
  m.def("ibp_residual_y", &ibp_residual_Y, py::arg("field"), py::arg("surface"),
        py::arg("axis"));

  m.def(
      "sweep",
      [](const MetricField& field, const std::string& functional, std::vector<double> radii,
         const std::optional<Vector>& axis_ratios, int order, double tolerance,
         std::optional<double> mass, int threads) {
        const Schedule schedule = axis_ratios ? Schedule::ellipsoids(std::move(radii), *axis_ratios)
                                              : Schedule::spheres(std::move(radii));
        SweepOptions o;
        o.order = order;
        o.tolerance = tolerance;
        o.mass = mass;
        o.threads = threads;
        ConvergenceReport rep;
        {
          py::gil_scoped_release release;
          rep = sweep(field, functional, schedule, o);
        }
        return report_dict(rep);
      },
      py::arg("field"), py::arg("functional"), py::arg("radii"),
      py::arg("axis_ratios") = py::none(), py::arg("order") = 24, py::arg("tolerance") = 1e-4,
      py::arg("mass") = py::none(), py::arg("threads") = 0);

  m.def(
      "run",
      [](const std::string& config_json, const std::string& command) {
        const run::RunConfig cfg = run::parse_config(config_json);
        run::validate(cfg);
        return run_dict(run::execute(cfg, run::parse_command(command)));
      },
      py::arg("config_json"), py::arg("command") = "sweep");
}
