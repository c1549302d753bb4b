#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hqe/eigendata.hpp"
#include "hqe/fem.hpp"
#include "hqe/io.hpp"

using namespace hqe;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("hqe_test_" + name)).string();
}

}  // namespace

TEST_CASE("torus spectrum at coarse spacing") {
    const EigenData d = torus_selftest(0.05, 10);
    const auto exact = torus_exact_eigenvalues(10);
    CHECK(std::abs(d.eigenvalues[0]) < 1e-9);
    for (int j = 1; j < 10; ++j) CHECK(std::abs(d.eigenvalues[j] / exact[j] - 1) < 0.05);
    CHECK_NOTHROW(validate(d));
}

TEST_CASE("exact torus eigenvalues") {
    const auto ev = torus_exact_eigenvalues(10);
    const double unit = 4 * pi * pi;
    CHECK(ev[0] == 0.0);
    for (int j = 1; j <= 4; ++j) CHECK(ev[j] == doctest::Approx(unit));
    for (int j = 5; j <= 8; ++j) CHECK(ev[j] == doctest::Approx(2 * unit));
    CHECK(ev[9] == doctest::Approx(4 * unit));
}

TEST_CASE("Bolza mesh and ground state") {
    const CoverSurface bolza = CoverSurface::trivial_cover(FuchsianGroup::bolza());
    const SurfaceMesh mesh = build_surface_mesh(bolza, 0.1);
    CHECK(mesh.n_dof > 0);
    const EigenData d = fem_eigensolve(bolza, 0.1, 4);
    CHECK(std::abs(d.eigenvalues[0]) < 1e-3);
    // constant ground state normalised to unit L2 mass
    const double level = 1.0 / std::sqrt(d.weight.sum());
    CHECK((d.eigenvectors.col(0).array() - level).abs().maxCoeff() < 1e-6);
    CHECK(d.weight.sum() == doctest::Approx(4 * pi).epsilon(0.02));
    CHECK(d.eigenvalues[1] > 3.0);
}

TEST_CASE("mesh spacing outside the supported range") {
    const CoverSurface bolza = CoverSurface::trivial_cover(FuchsianGroup::bolza());
    CHECK_THROWS_AS(build_surface_mesh(bolza, 0.5), DomainError);
    CHECK_THROWS_AS(build_torus_mesh(0.001), DomainError);
}

TEST_CASE("cover meshes carry one copy per sheet") {
    const CoverSurface c = random_cover(FuchsianGroup::bolza(), 2, 3);
    const EigenData d = fem_eigensolve(c, 0.1, 4);
    CHECK(d.weight.sum() == doctest::Approx(8 * pi).epsilon(0.02));
    CHECK(d.sheet.maxCoeff() == 1);
    CHECK(std::abs(d.eigenvalues[0]) < 1e-3);
}

TEST_CASE("eigendata round trip is bitwise") {
    const EigenData d = torus_selftest(0.1, 6);
    const std::string path = temp_path("roundtrip.csv");
    export_eigendata(d, path);
    const EigenData back = ingest_eigendata(path);
    std::remove(path.c_str());
    CHECK(back.surface_id == d.surface_id);
    CHECK(back.x == d.x);
    CHECK(back.y == d.y);
    CHECK(back.weight == d.weight);
    CHECK(back.sheet == d.sheet);
    CHECK(back.eigenvalues == d.eigenvalues);
    CHECK(back.eigenvectors == d.eigenvectors);
    CHECK(back.residuals == d.residuals);
    CHECK(to_csv(back) == to_csv(d));
}

TEST_CASE("corrupted eigendata is rejected") {
    const EigenData good = torus_selftest(0.1, 6);
    SUBCASE("Gram matrix") {
        EigenData bad = good;
        bad.eigenvectors.col(2) *= 1.01;
        CHECK_THROWS_AS(validate(bad), OrthonormalityViolation);
        CHECK_THROWS_AS(parse_eigendata(to_csv(bad)), OrthonormalityViolation);
    }
    SUBCASE("residuals") {
        EigenData bad = good;
        bad.residuals[3] = 10 * bad.residual_tol;
        CHECK_THROWS_AS(validate(bad), ResidualViolation);
    }
    SUBCASE("format") {
        CHECK_THROWS_AS(parse_eigendata(""), FormatError);
        CHECK_THROWS_AS(parse_eigendata("{not json\n"), FormatError);
        std::string text = to_csv(good);
        text.resize(text.size() / 2);
        CHECK_THROWS_AS(parse_eigendata(text), FormatError);
    }
}

TEST_CASE("shipped torus file") {
    const EigenData d = ingest_eigendata(HQE_TEST_DATA "/torus_selftest.csv");
    CHECK(d.n_modes() == 10);
    CHECK(d.surface_id == "torus/h=0.05");
    const auto exact = torus_exact_eigenvalues(10);
    for (int j = 1; j < 10; ++j) CHECK(std::abs(d.eigenvalues[j] / exact[j] - 1) < 0.05);
}
