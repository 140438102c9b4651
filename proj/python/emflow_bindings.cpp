// Python bindings for the main operations: dimensionless numbers, field and
// continuum evaluation, the 1D solver with its closed-form oracle, transfer
// functions and the 2D channel study.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emflow/analytic.hpp"
#include "emflow/core.hpp"
#include "emflow/fem1d.hpp"
#include "emflow/fem2d.hpp"
#include "emflow/ztrans.hpp"

namespace py = pybind11;
using namespace emflow;

PYBIND11_MODULE(_emflow, m) {
    m.doc() = "stabilized Galerkin FEM for flowmeter convection-diffusion";

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<double, double, double>(), py::arg("mu"), py::arg("sigma"), py::arg("u_z"))
        .def_readwrite("mu", &PhysicalParams::mu)
        .def_readwrite("sigma", &PhysicalParams::sigma)
        .def_readwrite("u_z", &PhysicalParams::u_z)
        .def("convection_rate", &PhysicalParams::convection_rate);

    py::class_<AppliedField>(m, "AppliedField")
        .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"), py::arg("B"),
             py::arg("L"))
        .def_readwrite("a", &AppliedField::a)
        .def_readwrite("b", &AppliedField::b)
        .def_readwrite("B", &AppliedField::B)
        .def_readwrite("L", &AppliedField::L);

    py::class_<Mesh1D>(m, "Mesh1D")
        .def(py::init<double, std::size_t, int>(), py::arg("dz"), py::arg("n_nodes"),
             py::arg("order") = 1)
        .def_readwrite("dz", &Mesh1D::dz)
        .def_readwrite("n_nodes", &Mesh1D::n_nodes)
        .def_readwrite("order", &Mesh1D::order);

    py::enum_<InputMode>(m, "InputMode")
        .value("flux_density", InputMode::flux_density)
        .value("vector_potential", InputMode::vector_potential);

    m.def("peclet", &peclet, py::arg("params"), py::arg("dz"));
    m.def("magnetic_reynolds", &magnetic_reynolds, py::arg("params"), py::arg("d_h"));
    m.def("applied_field_eval", &applied_field_eval, py::arg("field"), py::arg("z"));
    m.def("source_potential_eval", &source_potential_eval, py::arg("field"), py::arg("z"));
    m.def("ode_analytic_solution", &ode_analytic_solution, py::arg("field"), py::arg("params"),
          py::arg("z"));
    m.def(
        "reaction_field_forward_diff",
        [](const std::vector<double>& a_y, double dz) {
            return reaction_field_forward_diff(a_y, dz);
        },
        py::arg("a_y"), py::arg("dz"));

    py::class_<Solution1D>(m, "Solution1D")
        .def_readonly("a_y", &Solution1D::a_y)
        .def_readonly("b_x", &Solution1D::b_x);

    m.def("solve_1d", &fem1d::solve, py::arg("mesh"), py::arg("params"), py::arg("field"),
          py::arg("mode"), "assemble, apply boundary conditions and solve");

    m.def(
        "closed_form_samples",
        [](const Mesh1D& mesh, const AppliedField& field, const PhysicalParams& params,
           InputMode mode) {
            return analytic::sample_piecewise(
                analytic::closed_form_solution(mesh, field, params, mode));
        },
        py::arg("mesh"), py::arg("field"), py::arg("params"), py::arg("mode"),
        "nodal values of the closed-form difference-equation solution");

    m.def("oscillation_amplitude_asy", &analytic::oscillation_amplitude_asy, py::arg("pe"),
          py::arg("b"));
    m.def("oscillation_amplitude_bx", &analytic::oscillation_amplitude_bx, py::arg("pe"),
          py::arg("b"));

    py::class_<ztrans::RationalTF>(m, "RationalTF")
        .def_readonly("gain", &ztrans::RationalTF::gain)
        .def_readonly("zeros", &ztrans::RationalTF::zeros)
        .def_readonly("poles", &ztrans::RationalTF::poles);

    py::enum_<ztrans::StabilityClass>(m, "StabilityClass")
        .value("stable", ztrans::StabilityClass::stable)
        .value("oscillatory", ztrans::StabilityClass::oscillatory)
        .value("cancelled", ztrans::StabilityClass::cancelled);

    py::class_<ztrans::StabilityReport>(m, "StabilityReport")
        .def_readonly("oscillatory_pole", &ztrans::StabilityReport::oscillatory_pole)
        .def_readonly("cancellation_residual", &ztrans::StabilityReport::cancellation_residual)
        .def_readonly("classification", &ztrans::StabilityReport::classification);

    m.def("transfer_function", &ztrans::transfer_function, py::arg("pe"), py::arg("dz"),
          py::arg("mode"));
    m.def("stability_report", &ztrans::stability_report, py::arg("tf"), py::arg("pe"),
          py::arg("cancel_tol") = 0.05);

    py::class_<fem2d::ChannelGeometry>(m, "ChannelGeometry")
        .def(py::init([](double d, double window_a, double window_b) {
                 return fem2d::ChannelGeometry{d, window_a, window_b, 0.0};
             }),
             py::arg("d"), py::arg("window_a"), py::arg("window_b"))
        .def_readwrite("d", &fem2d::ChannelGeometry::d)
        .def_readwrite("window_a", &fem2d::ChannelGeometry::window_a)
        .def_readwrite("window_b", &fem2d::ChannelGeometry::window_b);

    py::class_<fem2d::Solution2D>(m, "Solution2D")
        .def_readonly("b_x", &fem2d::Solution2D::b_x)
        .def_property_readonly("z", [](const fem2d::Solution2D& s) { return s.grid.z; })
        .def_property_readonly("y", [](const fem2d::Solution2D& s) { return s.grid.y; });

    m.def(
        "solve_2d_channel",
        [](const fem2d::ChannelGeometry& geom, const PhysicalParams& params, double b_magnitude,
           double target_pe) {
            const auto grid = fem2d::build_grid(geom, params, target_pe);
            const AppliedField field{geom.window_a, geom.window_b, b_magnitude,
                                     geom.axial_length()};
            return fem2d::solve_2d(fem2d::assemble_2d(grid, geom, params, field));
        },
        py::arg("geom"), py::arg("params"), py::arg("B"), py::arg("target_pe") = 0.5,
        "build, assemble and solve the 2D plate-channel problem");
    m.def(
        "net_current_metric",
        [](const fem2d::Solution2D& sol, const PhysicalParams& params, double z0) {
            return fem2d::net_current_bisecting_plane(sol, params, z0).normalized;
        },
        py::arg("sol"), py::arg("params"), py::arg("z0"));
    m.def("downstream_decay_metric", &fem2d::downstream_decay_metric, py::arg("sol"));
    m.def("centerline_profile", &fem2d::centerline_profile, py::arg("sol"));
}
