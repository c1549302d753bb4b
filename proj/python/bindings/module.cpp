#include <pybind11/pybind11.h>

#include "hqe/core.hpp"

namespace py = pybind11;

void bind_geometry(py::module_& m);
void bind_transforms(py::module_& m);
void bind_propagators(py::module_& m);
void bind_fuchsian(py::module_& m);
void bind_variance(py::module_& m);

PYBIND11_MODULE(_hyperqe, m) {
    m.doc() = "Hyperbolic surface quantum variance toolkit";

    // library errors surface as HqeError with the kind as prefix
    static py::exception<hqe::Error> error(m, "HqeError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const hqe::Error& e) {
            py::set_error(error, (std::string(e.kind()) + ": " + e.what()).c_str());
        }
    });

    py::class_<hqe::Interval>(m, "Interval")
        .def(py::init([](double lo, double hi) { return hqe::Interval{lo, hi}; }), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &hqe::Interval::lo)
        .def_readwrite("hi", &hqe::Interval::hi)
        .def("__repr__", [](const hqe::Interval& iv) {
            return "Interval(" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + ")";
        });
    py::implicitly_convertible<py::tuple, hqe::Interval>();

    bind_geometry(m);
    bind_transforms(m);
    bind_propagators(m);
    bind_fuchsian(m);
    bind_variance(m);
}
