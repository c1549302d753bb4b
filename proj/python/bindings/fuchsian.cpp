#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hqe/fuchsian.hpp"

namespace py = pybind11;
using namespace hqe;

void bind_fuchsian(py::module_& m) {
    py::class_<FuchsianGroup>(m, "FuchsianGroup")
        .def_static("trivial", &FuchsianGroup::trivial)
        .def_static("cyclic", &FuchsianGroup::cyclic, py::arg("translation_length"))
        .def_static("bolza", &FuchsianGroup::bolza)
        .def_readonly("label", &FuchsianGroup::label)
        .def_readonly("relator", &FuchsianGroup::relator)
        .def("rank", &FuchsianGroup::rank)
        .def("evaluate", &FuchsianGroup::evaluate);

    py::class_<CoverSurface>(m, "CoverSurface")
        .def_static("trivial_cover", &CoverSurface::trivial_cover)
        .def_readonly("degree", &CoverSurface::degree)
        .def_readonly("permutations", &CoverSurface::permutations)
        .def("volume", &CoverSurface::volume)
        .def("id", &CoverSurface::id);

    m.def("systole", &systole);
    m.def("random_cover", &random_cover, py::arg("base"), py::arg("degree"), py::arg("seed"));
    m.def("is_transitive", &is_transitive);
    m.def(
        "orbit_displacements",
        [](const FuchsianGroup& g, double R, int word_cap) {
            std::vector<double> out;
            for (const auto& e : orbit_enumerate(g, DiscPoint(), R, word_cap).elements) out.push_back(e.displacement);
            return out;
        },
        py::arg("group"), py::arg("R"), py::arg("word_cap") = 8);
    m.def(
        "word_oracle_count",
        [](const FuchsianGroup& g, double R, int max_length) { return word_oracle(g, R, max_length).distinct_within; },
        py::arg("group"), py::arg("R"), py::arg("max_length") = 8);
    m.def(
        "injectivity_radius",
        [](const FuchsianGroup& g, const DiscPoint& z, double search_R) {
            return injectivity_radius_at(g, z, search_R).value;
        },
        py::arg("group"), py::arg("z"), py::arg("search_R"));

    py::class_<BsEstimate>(m, "BsEstimate")
        .def_readonly("value", &BsEstimate::value)
        .def_readonly("std_error", &BsEstimate::std_error)
        .def_readonly("exact", &BsEstimate::exact);
    m.def("bs_statistic", &bs_statistic, py::arg("surface"), py::arg("R"), py::arg("n_samples"), py::arg("seed"));
}
