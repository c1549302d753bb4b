#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqe/eigendata.hpp"
#include "hqe/fem.hpp"
#include "hqe/variance.hpp"

namespace py = pybind11;
using namespace hqe;

void bind_variance(py::module_& m) {
    py::class_<Toy1dResult>(m, "Toy1dResult")
        .def_readonly("variance", &Toy1dResult::variance)
        .def_readonly("bound", &Toy1dResult::bound)
        .def_readonly("count", &Toy1dResult::count)
        .def_readonly("modes", &Toy1dResult::modes)
        .def_readonly("terms", &Toy1dResult::terms);
    m.def("toy1d_variance", &toy1d_variance, py::arg("L"), py::arg("window"), py::arg("observable"),
          py::arg("sup_bound"), py::arg("breakpoints") = std::vector<double>{}, py::arg("tol") = 1e-10);

    m.def("weyl_predicted", &weyl_predicted, py::arg("window"));

    py::class_<EigenData>(m, "EigenData")
        .def_readonly("surface_id", &EigenData::surface_id)
        .def_readonly("x", &EigenData::x)
        .def_readonly("y", &EigenData::y)
        .def_readonly("weight", &EigenData::weight)
        .def_readonly("eigenvalues", &EigenData::eigenvalues)
        .def_readonly("eigenvectors", &EigenData::eigenvectors)
        .def_readonly("residuals", &EigenData::residuals);
    m.def("torus_selftest", &torus_selftest, py::arg("h"), py::arg("n_modes"));
    m.def("torus_exact_eigenvalues", &torus_exact_eigenvalues, py::arg("count"));
    m.def("fem_eigensolve", py::overload_cast<const CoverSurface&, double, int>(&fem_eigensolve), py::arg("surface"),
          py::arg("h"), py::arg("n_modes"));
    m.def("export_eigendata", &export_eigendata, py::arg("data"), py::arg("path"));
    m.def("ingest_eigendata", &ingest_eigendata, py::arg("path"));

    py::class_<PipelineInputs>(m, "PipelineInputs")
        .def(py::init<>())
        .def_readwrite("theta_norm", &PipelineInputs::theta_norm)
        .def_readwrite("kernel_sup", &PipelineInputs::kernel_sup)
        .def_readwrite("locality_S", &PipelineInputs::locality_S)
        .def_readwrite("systole", &PipelineInputs::systole)
        .def_readwrite("bs_fraction", &PipelineInputs::bs_fraction)
        .def_readwrite("kernel_rho_l2sq", &PipelineInputs::kernel_rho_l2sq)
        .def_readwrite("nevo_n", &PipelineInputs::nevo_n);
    py::class_<PipelineBounds>(m, "PipelineBounds")
        .def_readonly("S_T", &PipelineBounds::S_T)
        .def_readonly("time_term", &PipelineBounds::time_term)
        .def_readonly("geometric_term", &PipelineBounds::geometric_term)
        .def_readonly("propagation_term", &PipelineBounds::propagation_term)
        .def_readonly("truncation_term", &PipelineBounds::truncation_term)
        .def_readonly("total", &PipelineBounds::total)
        .def_readonly("dominant", &PipelineBounds::dominant);
    m.def("variance_pipeline_bounds", &variance_pipeline_bounds, py::arg("inputs"), py::arg("T"), py::arg("r"),
          py::arg("s") = 0.0);
}
