#include "doctest.h"

#include <cmath>

#include "hqe/eigendata.hpp"
#include "hqe/fem.hpp"
#include "hqe/variance.hpp"

using namespace hqe;

namespace {

double alternating_step(double x) { return static_cast<long>(std::floor(x / 0.7)) % 2 == 0 ? 1.0 : -1.0; }

std::vector<double> step_cuts(double L) {
    std::vector<double> cuts;
    for (double x = 0.7; x < L; x += 0.7) cuts.push_back(x);
    return cuts;
}

}  // namespace

TEST_CASE("toy model: count and bound") {
    const Toy1dResult r = toy1d_variance(100.0, {1.0, 2.0}, [](double x) { return std::cos(x); }, 1.0);
    // (k pi / 100)^2 in [1, 2] for k = 32..45
    CHECK(r.count == 14);
    CHECK(r.modes.front() == 32);
    CHECK(r.modes.back() == 45);
    CHECK(r.bound == doctest::Approx(1.0 / 14));
    CHECK(r.variance >= 0.0);
    CHECK(r.variance <= r.bound);
}

TEST_CASE("toy model: bound holds over a sweep") {
    for (double L : {50.0, 100.0, 200.0})
        for (Interval w : {Interval{1, 2}, Interval{0.5, 3}, Interval{2, 4}}) {
            const Toy1dResult a = toy1d_variance(L, w, alternating_step, 1.0, step_cuts(L));
            CHECK(a.variance <= a.bound);
            const Toy1dResult b = toy1d_variance(L, w, [L](double x) { return x < L / 3 ? 1.0 : -0.5; }, 1.0, {L / 3});
            CHECK(b.variance <= b.bound);
        }
}

TEST_CASE("toy model: constant observable has zero variance") {
    const Toy1dResult r = toy1d_variance(100.0, {1.0, 2.0}, [](double) { return 0.7; }, 1.0);
    CHECK(r.variance < 1e-20);
}

TEST_CASE("toy model: empty window") {
    CHECK_THROWS_AS(toy1d_variance(10.0, {1.0, 1.01}, [](double) { return 1.0; }, 1.0), EmptyWindow);
}

TEST_CASE("toy model: N/L stable within 5% on [1, 4]") {
    std::vector<double> ratios;
    for (double L : {100.0, 400.0, 1600.0})
        ratios.push_back(toy1d_variance(L, {1.0, 4.0}, [](double x) { return std::cos(x); }, 1.0).count / L);
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK((*hi - *lo) / *hi < 0.05);
}

TEST_CASE("toy model: N/L on [1, 2] approaches (sqrt 2 - 1)/pi within one mode per L") {
    const double limit = (std::sqrt(2.0) - 1) / pi;
    for (double L : {100.0, 400.0, 1600.0}) {
        const int n = toy1d_variance(L, {1.0, 2.0}, [](double x) { return std::cos(x); }, 1.0).count;
        CHECK(std::abs(n / L - limit) <= 1.0 / L + 1e-12);
    }
}

TEST_CASE("spectral window") {
    const SpectralWindow w = SpectralWindow::from_nu({1.0, 4.0});
    CHECK(w.I.lo == doctest::Approx(std::sqrt(0.75)));
    CHECK(w.I.hi == doctest::Approx(std::sqrt(3.75)));
    CHECK(w.I_prime.lo < w.I.lo);
    CHECK(w.I_prime.hi > w.I.hi);
    CHECK_THROWS_AS(SpectralWindow::from_nu({0.2, 1.0}), DomainError);
}

TEST_CASE("Weyl prediction") {
    CHECK(weyl_predicted({1.0, 4.0}) == doctest::Approx(0.238508353387073).epsilon(1e-12));
    CHECK(weyl_predicted({2.0, 2.0}) == 0.0);
    // nesting J1 inside J2 can only increase the prediction
    const Interval nested[] = {{1.5, 2.0}, {1.2, 2.5}, {1.0, 4.0}, {0.5, 6.0}, {0.3, 10.0}};
    for (std::size_t i = 1; i < std::size(nested); ++i)
        CHECK(weyl_predicted(nested[i]) > weyl_predicted(nested[i - 1]));
    // large-window asymptotics: (1/4 pi) (b - a) when tanh ~ 1
    CHECK(weyl_predicted({100.0, 200.0}) == doctest::Approx(100.0 / (4 * pi)).epsilon(1e-6));
}

TEST_CASE("quantum variance on the Bolza surface") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const CoverSurface surface = CoverSurface::trivial_cover(bolza);
    const EigenData data = fem_eigensolve(surface, 0.1, 20);
    const SpectralWindow w = SpectralWindow::from_nu({1.0, 9.0});
    const SampleRegion region = SampleRegion::of_group(bolza);
    const PlancherelWeight weight;

    SUBCASE("constant observable") {
        Observable one = multiplication_observable("one", [](const DiscPoint&) { return 1.0; }, 1.0);
        one.multiplier_mean = 1.0;
        const VarianceReport r = quantum_variance(one, data, w, weight, 1, region, surface.volume(), 100);
        CHECK(r.count > 0);
        for (double t : r.terms) CHECK(t < 1e-20);
        CHECK(r.variance < 1e-20);
    }
    SUBCASE("mean-zero observable: limit term vanishes") {
        const Observable bump = orbit_bump_observable(bolza, 1.4);
        const VarianceReport r = quantum_variance(bump, data, w, weight, 1, region, surface.volume(), 500);
        double mean = 0;
        for (std::size_t j = 0; j < r.terms.size(); ++j) {
            CHECK(std::abs(r.limit_terms[j]) < 1e-12);
            CHECK(r.terms[j] == doctest::Approx(r.matrix_elements[j] * r.matrix_elements[j]).epsilon(1e-12));
            mean += r.terms[j];
        }
        CHECK(r.variance == doctest::Approx(mean / r.terms.size()));
        CHECK(r.variance >= 0.0);
    }
    SUBCASE("other observables cannot act on samples") {
        CHECK_THROWS_AS(quantum_variance(laplacian_observable(), data, w, weight, 1, region, surface.volume(), 10),
                        DomainError);
    }
    SUBCASE("Weyl needs resolved data") {
        CHECK_THROWS_AS(weyl_ratio(data, {1.0, 100.0}, surface.volume()), WindowNotResolved);
        const WeylReport empty = weyl_ratio(data, {2.0, 2.0}, surface.volume());
        CHECK(empty.count == 0);
        CHECK(empty.predicted == 0.0);
    }
}

TEST_CASE("pipeline bound: explicit scalings") {
    PipelineInputs in;
    in.theta_norm = 0.3;
    in.kernel_sup = 2.0;
    in.locality_S = 0.5;
    in.systole = 3.0;
    in.bs_fraction = 0.25;
    in.kernel_rho_l2sq = 1.5;
    in.nevo_n = 2.0;

    const PipelineBounds a = variance_pipeline_bounds(in, 1.0, 2.0), b = variance_pipeline_bounds(in, 2.0, 2.0);
    CHECK(b.time_term == doctest::Approx(a.time_term / 2).epsilon(1e-15));

    const PipelineBounds r1 = variance_pipeline_bounds(in, 1.0, 2.0), r2 = variance_pipeline_bounds(in, 1.0, 4.0);
    const double ratio1 = r1.propagation_term / (r1.S_T / r1.r * (r1.S_T / r1.r));
    const double ratio2 = r2.propagation_term / (r2.S_T / r2.r * (r2.S_T / r2.r));
    CHECK(r2.propagation_term == doctest::Approx(r1.propagation_term / 4).epsilon(1e-14));
    CHECK(ratio1 == doctest::Approx(ratio2));
    CHECK(r2.truncation_term == doctest::Approx(r1.truncation_term * 9.0 / 25.0).epsilon(1e-14));
    CHECK(r1.mean_term == 0.0);
}

TEST_CASE("pipeline bound: frozen configuration recomputed by hand") {
    PipelineInputs in;
    in.theta_norm = 0.3;
    in.kernel_sup = 2.0;
    in.locality_S = 0.5;
    in.systole = 3.0;
    in.bs_fraction = 0.25;
    in.kernel_rho_l2sq = 1.5;
    in.nevo_n = 2.0;
    in.bs_fraction_mean = 0.5;
    in.mean_kernel_sup = 0.1;
    const PipelineBounds b = variance_pipeline_bounds(in, 1.0, 2.0, 0.5);
    // S_T = 2 T + S = 2.5, (S_T / r)^2 = 1.5625, sup|K|^2 = 4
    // C_rho = pi * 1.5, C'_rho = C_rho + 1.5
    const double C = pi * 1.5, Cp = C + 1.5;
    CHECK(b.S_T == 2.5);
    CHECK(b.time_term == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(b.geometric_term == doctest::Approx(2 * 2.5625 * Cp * 4 * std::exp(9.0) / 3.0 * 0.25).epsilon(1e-14));
    CHECK(b.propagation_term == doctest::Approx(2 * 1.5625 * std::exp(5.0) * 4 * 1.5).epsilon(1e-14));
    CHECK(b.truncation_term == doctest::Approx(2 * two_pi * (std::cosh(2.5) - 1) * 4 / 9.0).epsilon(1e-14));
    CHECK(b.mean_term == doctest::Approx(std::exp(5.0) / 3.0 * 0.5 * 0.01).epsilon(1e-14));
    CHECK(b.total == doctest::Approx(b.time_term + b.geometric_term + b.propagation_term + b.truncation_term +
                                     b.mean_term));
    CHECK(b.dominant == "geometric");
    CHECK(b.C_rho == doctest::Approx(C));
}

TEST_CASE("pipeline bound: invalid inputs") {
    PipelineInputs in;
    in.systole = 1.0;
    CHECK_THROWS_AS(variance_pipeline_bounds(in, 0.0, 1.0), DomainError);
    in.nevo_n = 1.0;
    CHECK_THROWS_AS(variance_pipeline_bounds(in, 1.0, 1.0), DomainError);
}

TEST_CASE("suggested mode count reaches past the window") {
    const int n = suggested_mode_count(4 * pi, {1.0, 4.0});
    CHECK(n >= 10);
    CHECK(n == static_cast<int>(std::ceil(1.5 * 4 * pi * 1.2 * 4.0 / (4 * pi))) + 10);
}
