// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hesseig/eigen_solver.hpp"
#include "hesseig/radial.hpp"
#include "hesseig/verify.hpp"

namespace py = pybind11;
using namespace hesseig;

PYBIND11_MODULE(_core, m) {
  m.doc() = "First Dirichlet eigenpairs of concave elliptic Hessian operators";

  py::class_<HessianOperator>(m, "HessianOperator")
      .def_static("k_hessian", &HessianOperator::k_hessian, py::arg("k"), py::arg("n"))
      .def_static("p_monge_ampere", &HessianOperator::p_monge_ampere, py::arg("p"),
                  py::arg("n"))
      .def_static("parse", &HessianOperator::parse, py::arg("token"))
      .def("token", &HessianOperator::token)
      .def_readonly("index", &HessianOperator::index)
      .def_readonly("dim", &HessianOperator::dim)
      .def_readonly("norm_factor", &HessianOperator::norm_factor)
      .def("__repr__", [](const HessianOperator& op) { return op.token(); });

  m.def("cone_contains",
        py::overload_cast<const HessianOperator&, const Spectrum&, double>(&cone_contains),
        py::arg("op"), py::arg("lam"), py::arg("margin") = 0.0);
  m.def("eval_f", py::overload_cast<const HessianOperator&, const Spectrum&>(&eval_f),
        py::arg("op"), py::arg("lam"));
  m.def("grad_f", py::overload_cast<const HessianOperator&, const Spectrum&>(&grad_f),
        py::arg("op"), py::arg("lam"));
  m.def("eval_F", &eval_F, py::arg("op"), py::arg("A"));
  m.def("linearization_DF", &linearization_DF, py::arg("op"), py::arg("A"),
        py::arg("margin") = 0.0);
  m.def("condition_T_constant", &condition_T_constant, py::arg("op"));

  py::class_<DomainSpec>(m, "DomainSpec")
      .def_static("rectangle", &DomainSpec::rectangle, py::arg("width"), py::arg("height"))
      .def_static("disk", &DomainSpec::disk, py::arg("radius"))
      .def_static("parse", &DomainSpec::parse, py::arg("token"))
      .def("token", &DomainSpec::token)
      .def("__repr__", [](const DomainSpec& d) { return d.token(); });

  py::class_<Grid>(m, "Grid")
      .def_readonly("hx", &Grid::hx)
      .def_readonly("hy", &Grid::hy)
      .def_readonly("nx", &Grid::nx)
      .def_readonly("ny", &Grid::ny)
      .def_readonly("interior_nodes", &Grid::interior_nodes)
      .def("num_interior", &Grid::num_interior)
      .def("num_nodes", &Grid::num_nodes)
      .def("x_of", &Grid::x_of, py::arg("node"))
      .def("y_of", &Grid::y_of, py::arg("node"));

  py::class_<GridField>(m, "GridField")
      .def_readonly("values", &GridField::values)
      .def("sup_norm", &GridField::sup_norm);

  m.def("build_grid", &build_grid, py::arg("domain"), py::arg("h"),
        py::return_value_policy::move);
  m.def(
      "hessian_at",
      [](const GridField& f, int node) -> Eigen::MatrixXd { return hessian_at(f, node); },
      py::arg("field"), py::arg("node"));
  m.def("laplace_mu1", &laplace_mu1, py::arg("grid"));
  m.def("barrier_subsolution", &barrier_subsolution, py::arg("grid"), py::arg("R_param"));

  py::class_<GammaConvexityReport>(m, "GammaConvexityReport")
      .def_readonly("convex", &GammaConvexityReport::convex)
      .def_readonly("required_R", &GammaConvexityReport::required_R)
      .def_readonly("warning", &GammaConvexityReport::warning);
  m.def("check_strict_gamma_convexity", &check_strict_gamma_convexity,
        py::arg("domain"), py::arg("op"));

  py::class_<NewtonOptions>(m, "NewtonOptions")
      .def(py::init<>())
      .def_readwrite("tol", &NewtonOptions::tol)
      .def_readwrite("max_iter", &NewtonOptions::max_iter)
      .def_readwrite("shrink", &NewtonOptions::shrink)
      .def_readwrite("cone_margin", &NewtonOptions::cone_margin)
      .def_readwrite("delta_reg", &NewtonOptions::delta_reg);

  py::class_<NewtonReport>(m, "NewtonReport")
      .def_readonly("iterations", &NewtonReport::iterations)
      .def_readonly("residual", &NewtonReport::residual)
      .def_readonly("damping_events", &NewtonReport::damping_events)
      .def_readonly("admissibility_backtracks", &NewtonReport::admissibility_backtracks)
      .def_readonly("converged", &NewtonReport::converged);

  m.def(
      "solve_family",
      [](const HessianOperator& op, const Grid& grid, double lambda,
         const std::optional<GridField>& warm, const NewtonOptions& opts) {
        return solve_family(op, grid, lambda, warm, opts);
      },
      py::arg("op"), py::arg("grid"), py::arg("lam"),
      py::arg("warm_start") = std::nullopt, py::arg("options") = NewtonOptions{});

  m.def(
      "homotopy_solve_family_rhs",
      [](const HessianOperator& op, const Grid& grid, double lambda_target,
         double Lambda0, double lambda_pick, double N, int steps,
         const NewtonOptions& opts) {
        RhsSpec psi = RhsSpec::custom(
            [lambda_target](double, double, double u) { return 1.0 - lambda_target * u; },
            [lambda_target](double, double, double) { return -lambda_target; });
        return homotopy_solve(op, grid, psi, Lambda0, lambda_pick, N, steps, opts);
      },
      py::arg("op"), py::arg("grid"), py::arg("lambda_target"), py::arg("Lambda0"),
      py::arg("lambda_pick"), py::arg("N"), py::arg("steps"),
      py::arg("options") = NewtonOptions{});

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("lam", &TraceRecord::lambda)
      .def_readonly("sup_norm", &TraceRecord::sup_norm)
      .def_readonly("newton_iterations", &TraceRecord::newton_iterations)
      .def_readonly("residual", &TraceRecord::residual);

  py::class_<ContinuationTrace>(m, "ContinuationTrace")
      .def_readonly("records", &ContinuationTrace::records)
      .def_readonly("reached_cap", &ContinuationTrace::reached_cap)
      .def_readonly("monotone", &ContinuationTrace::monotone);

  py::class_<EigenOptions>(m, "EigenOptions")
      .def(py::init<>())
      .def_readwrite("newton", &EigenOptions::newton)
      .def_readwrite("tol_eig", &EigenOptions::tol_eig)
      .def_readwrite("blowup_cap", &EigenOptions::blowup_cap)
      .def_readwrite("max_refine", &EigenOptions::max_refine);

  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("lambda1", &EigenResult::lambda1)
      .def_readonly("eigenfunction", &EigenResult::eigenfunction)
      .def_readonly("residual", &EigenResult::residual)
      .def_readonly("lower_bound", &EigenResult::lower_bound)
      .def_readonly("upper_bound", &EigenResult::upper_bound)
      .def_readonly("refine_iterations", &EigenResult::refine_iterations)
      .def_readonly("trace", &EigenResult::trace);

  m.def("solve_eigenproblem", &solve_eigenproblem, py::arg("op"), py::arg("grid"),
        py::arg("options") = EigenOptions{});
  m.def("inverse_power_refine", &inverse_power_refine, py::arg("op"), py::arg("grid"),
        py::arg("v0"), py::arg("Lambda0"), py::arg("tol_eig"),
        py::arg("options") = EigenOptions{});

  py::class_<PropertyReport>(m, "PropertyReport")
      .def_readonly("property", &PropertyReport::property)
      .def_readonly("operator_token", &PropertyReport::operator_token)
      .def_readonly("seed", &PropertyReport::seed)
      .def_readonly("samples", &PropertyReport::samples)
      .def_readonly("worst_margin", &PropertyReport::worst_margin)
      .def_readonly("witness", &PropertyReport::witness)
      .def_readonly("note", &PropertyReport::note)
      .def_property_readonly("passed", [](const PropertyReport& r) { return r.pass; });

  m.def("verify_bounds", &verify_bounds, py::arg("op"), py::arg("grid"),
        py::arg("result"), py::arg("u0"));
  m.def("verify_uniqueness", &verify_uniqueness, py::arg("op"), py::arg("grid"),
        py::arg("result"), py::arg("trials"), py::arg("seed"),
        py::arg("options") = EigenOptions{});

  py::enum_<SampleStrategy>(m, "SampleStrategy")
      .value("interior", SampleStrategy::interior)
      .value("boundary_approach", SampleStrategy::boundary_approach)
      .value("ray", SampleStrategy::ray);

  py::class_<SampleCloud>(m, "SampleCloud")
      .def_readonly("points", &SampleCloud::points)
      .def_readonly("seed", &SampleCloud::seed)
      .def_readonly("strategy", &SampleCloud::strategy);

  m.def("sample_cone", &sample_cone, py::arg("op"), py::arg("count"), py::arg("seed"),
        py::arg("strategy") = SampleStrategy::interior);
  m.def("check_condition_T", &check_condition_T, py::arg("op"), py::arg("cloud"));
  m.def("check_garding_equivalence", &check_garding_equivalence, py::arg("op"),
        py::arg("cloud_lam"), py::arg("cloud_tau"));
  m.def("check_urbas", &check_urbas, py::arg("op"), py::arg("cloud"));
  m.def("check_concavity", &check_concavity, py::arg("op"), py::arg("cloud"));
  m.def("falsify_quotient_T", &falsify_quotient_T, py::arg("n"), py::arg("k"),
        py::arg("l"));

  m.def(
      "oracle_lambda1",
      [](const HessianOperator& op, double radius, int mesh) {
        return oracle_lambda1(RadialProblem{op, radius, mesh});
      },
      py::arg("op"), py::arg("radius"), py::arg("mesh") = 100000);

  py::register_exception<ConeError>(m, "ConeError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolationError",
                                            PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
}
