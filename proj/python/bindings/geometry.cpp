#include <pybind11/complex.h>
#include <pybind11/pybind11.h>

#include "hqe/geometry.hpp"

namespace py = pybind11;
using namespace hqe;

void bind_geometry(py::module_& m) {
    py::class_<DiscPoint>(m, "DiscPoint")
        .def(py::init<>())
        .def(py::init<cplx>(), py::arg("z"))
        .def(py::init<double, double>(), py::arg("re"), py::arg("im"))
        .def_property_readonly("z", &DiscPoint::z)
        .def("__repr__", [](const DiscPoint& p) {
            return "DiscPoint(" + std::to_string(p.re()) + ", " + std::to_string(p.im()) + ")";
        });
    py::implicitly_convertible<cplx, DiscPoint>();

    py::class_<BoundaryPoint>(m, "BoundaryPoint")
        .def(py::init<double>(), py::arg("angle"))
        .def_property_readonly("angle", &BoundaryPoint::angle);

    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init<>())
        .def(py::init<cplx, cplx>(), py::arg("alpha"), py::arg("beta"))
        .def_static("from_sl2r", &GroupElement::from_sl2r)
        .def("to_sl2r", &GroupElement::to_sl2r)
        .def_property_readonly("alpha", &GroupElement::alpha)
        .def_property_readonly("beta", &GroupElement::beta)
        .def("__mul__", &GroupElement::operator*)
        .def("inverse", &GroupElement::inverse)
        .def("apply", [](const GroupElement& g, const DiscPoint& z) { return mobius_apply(g, z); })
        .def("translation_length", &GroupElement::translation_length)
        .def("approx_equal", &GroupElement::approx_equal, py::arg("other"), py::arg("tol") = 1e-9);

    py::class_<AnkCoords>(m, "AnkCoords")
        .def(py::init([](double s, double u, double theta) { return AnkCoords{s, u, theta}; }))
        .def_readwrite("s", &AnkCoords::s)
        .def_readwrite("u", &AnkCoords::u)
        .def_readwrite("theta", &AnkCoords::theta);

    m.def("hyp_distance", &hyp_distance);
    m.def("hyp_norm", &hyp_norm);
    m.def("busemann", &busemann);
    m.def("poisson_weight", &poisson_weight);
    m.def("a_flow", &a_flow);
    m.def("n_flow", &n_flow);
    m.def("k_rotation", &k_rotation);
    m.def("ank_decompose", &ank_decompose);
    m.def("ank_compose", &ank_compose);
    m.def("translation_to", &translation_to);
    m.def("polar_point", &polar_point);
    m.def("cayley", &cayley);
    m.def("cayley_inverse", &cayley_inverse);
}
