#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swimopt/pipeline.hpp"
#include "swimopt/shapes.hpp"
#include "swimopt/workflows.hpp"

namespace py = pybind11;
using namespace swimopt;

namespace {

GeneratingCurve curve_of(const Eigen::VectorXd& params, const Discretization& disc) {
  return curve_from_free_params(params, disc.shape_basis());
}

py::dict summary(const ShapeEvaluation& ev) {
  py::dict d;
  d["E"] = ev.report.E;
  d["U"] = ev.report.U_opt;
  d["F0"] = ev.report.F0;
  d["J_W"] = ev.report.J_W;
  d["J_D"] = ev.report.J_D;
  d["J_drag"] = ev.J_drag;
  d["nu"] = ev.measures.nu;
  d["V"] = ev.measures.V;
  d["A"] = ev.measures.A;
  d["t"] = ev.geom.grid.t;
  d["slip"] = ev.report.z_S;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Axisymmetric microswimmer shape optimisation";

  py::class_<Discretization>(m, "Discretization")
      .def(py::init<>())
      .def_readwrite("n_intervals", &Discretization::n_intervals)
      .def_readwrite("n_u", &Discretization::n_u)
      .def_readwrite("n_panels", &Discretization::n_panels)
      .def_readwrite("panel_order", &Discretization::panel_order)
      .def("validate", &Discretization::validate);

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def(
      "preset_params",
      [](const std::string& name, double nu, const Discretization& disc) {
        return free_params(preset_curve(name, nu, disc.n_intervals));
      },
      py::arg("name"), py::arg("nu"), py::arg("disc") = Discretization{},
      "Free spline parameters of a preset shape (sphere, spheroid, peanut) at reduced volume nu.");

  m.def(
      "evaluate",
      [](const Eigen::VectorXd& params, const Discretization& disc) {
        return summary(evaluate_shape(curve_of(params, disc), disc, true));
      },
      py::arg("params"), py::arg("disc") = Discretization{},
      "E, U, F0, J_W, J_D, J_drag, nu, V, A and the optimal slip at the nodes.");

  m.def(
      "gradients",
      [](const Eigen::VectorXd& params, const Discretization& disc) {
        const ShapeEvaluation ev = evaluate_shape(curve_of(params, disc), disc, true);
        py::dict d;
        d["dE"] = gradient_vector(ev.geom, Objective::efficiency, ev.report).values;
        d["dJdrag"] = gradient_vector(ev.geom, Objective::drag, ev.report).values;
        d["dnu"] = gradient_vector(ev.geom, Objective::reduced_volume, ev.report).values;
        return d;
      },
      py::arg("params"), py::arg("disc") = Discretization{});

  m.def(
      "shape",
      [](const Eigen::VectorXd& params, const Eigen::VectorXd& t, const Discretization& disc) {
        const GeneratingCurve c = curve_of(params, disc);
        Eigen::VectorXd R(t.size()), Z(t.size());
        for (Eigen::Index i = 0; i < t.size(); ++i) {
          const CurvePoint p = c.at(t[i]);
          R[i] = p.R;
          Z[i] = p.Z;
        }
        return py::make_tuple(R, Z);
      },
      py::arg("params"), py::arg("t"), py::arg("disc") = Discretization{}, "Meridian (R, Z) at parameters t.");

  m.def(
      "optimize",
      [](const std::string& problem, double nu, const Eigen::VectorXd& init, const Discretization& disc,
         double c_tol, int max_outer) {
        OptOptions o;
        o.disc = disc;
        o.alm.c_tol = c_tol;
        o.alm.max_outer = max_outer;
        const OptResult r = [&] {
          py::gil_scoped_release release;
          return optimize_shape(parse_problem(problem), curve_of(init, disc), nu, o);
        }();
        py::dict d;
        d["params"] = r.params;
        d["E"] = r.E;
        d["J_drag"] = r.J_drag;
        d["nu"] = r.nu;
        d["converged"] = r.converged;
        d["outer_iterations"] = r.outer_iterations;
        d["inner_iterations"] = r.inner_iterations;
        return d;
      },
      py::arg("problem"), py::arg("nu"), py::arg("init"), py::arg("disc") = Discretization{},
      py::arg("c_tol") = 1e-6, py::arg("max_outer") = 20);

  m.def("prolate_drag", &prolate_drag, py::arg("b"), py::arg("c"));
}
