#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqe/propagators.hpp"

namespace py = pybind11;
using namespace hqe;

void bind_propagators(py::module_& m) {
    m.def("default_eta", &default_eta);
    m.def("sharp_ball_kernel", &sharp_ball_kernel, py::arg("t"));
    m.def(
        "smooth_ball_kernel", [](double t, double sigma) { return smooth_ball_kernel(t, sigma); }, py::arg("t"),
        py::arg("sigma"));
    m.def("h_sharp", py::overload_cast<double, double>(&h_sharp), py::arg("t"), py::arg("lam"));
    m.def(
        "h_smooth", [](double t, double sigma, double lambda) { return h_smooth(t, sigma, lambda); }, py::arg("t"),
        py::arg("sigma"), py::arg("lam"));
    m.def("abel_inner_integral", &abel_inner_integral, py::arg("lam"), py::arg("r"));
    m.def("abel_inner_bound", &abel_inner_bound, py::arg("lam"), py::arg("r"));
    m.def("lambda_grid", &lambda_grid, py::arg("interval"), py::arg("spacing") = 0.02);

    py::class_<PositivityCertificate>(m, "PositivityCertificate")
        .def_readonly("I", &PositivityCertificate::I)
        .def_readonly("sigma", &PositivityCertificate::sigma)
        .def_readonly("T_list", &PositivityCertificate::T_list)
        .def_readonly("c_min", &PositivityCertificate::c_min)
        .def_readonly("argmin", &PositivityCertificate::argmin)
        .def_readonly("c_min_sharp", &PositivityCertificate::c_min_sharp)
        .def_readonly("positive", &PositivityCertificate::positive)
        .def_readonly("stable", &PositivityCertificate::stable)
        .def_readonly("passed", &PositivityCertificate::pass);
    m.def(
        "positivity_certificate",
        [](Interval I, double sigma, const std::vector<double>& T, double spacing) {
            return positivity_certificate(I, sigma, T, lambda_grid(I, spacing));
        },
        py::arg("interval"), py::arg("sigma"), py::arg("T_list"), py::arg("spacing") = 0.02);
}
