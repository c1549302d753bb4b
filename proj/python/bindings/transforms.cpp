#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqe/special.hpp"
#include "hqe/transforms.hpp"

namespace py = pybind11;
using namespace hqe;

void bind_transforms(py::module_& m) {
    py::class_<RadialKernel>(m, "RadialKernel")
        .def("__call__", &RadialKernel::operator())
        .def_readonly("support", &RadialKernel::support);

    py::class_<SpectralMultiplier>(m, "SpectralMultiplier").def("__call__", &SpectralMultiplier::operator());

    py::class_<PlancherelWeight>(m, "PlancherelWeight")
        .def(py::init([](const std::string& name) { return PlancherelWeight::parse(name); }),
             py::arg("name") = "harmonic")
        .def("__call__", &PlancherelWeight::operator())
        .def("selberg_constant", &PlancherelWeight::selberg_constant)
        .def("hs_constant", &PlancherelWeight::hs_constant)
        .def_property_readonly("name", &PlancherelWeight::name);

    m.def("spherical_phi", &spherical_phi, py::arg("lam"), py::arg("t"));
    m.def(
        "spherical_phi_series", [](double lambda, double t) { return spherical_phi_series(lambda, t).value; },
        py::arg("lam"), py::arg("t"));
    m.def(
        "c_function_inv_abs2", [](double lambda) { return harish_chandra_c(lambda).inv_abs2; }, py::arg("lam"));

    m.def(
        "selberg_value",
        [](const RadialKernel& k, double lambda, double normalization) { return selberg_value(k, lambda, normalization); },
        py::arg("kernel"), py::arg("lam"), py::arg("normalization") = 1.0);
    m.def(
        "fourier_of_abel_transform",
        [](const RadialKernel& k, double lambda) { return fourier_of_abel(abel_transform(k), lambda); },
        py::arg("kernel"), py::arg("lam"));
    m.def("bump_multiplier", &bump_multiplier, py::arg("lo"), py::arg("hi"));
    m.def(
        "inverse_selberg",
        [](const SpectralMultiplier& rho, const PlancherelWeight& w) { return inverse_selberg(rho, w); },
        py::arg("rho"), py::arg("weight"));
}
