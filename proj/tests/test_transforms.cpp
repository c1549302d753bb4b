#include "doctest.h"

#include <cmath>

#include "hqe/propagators.hpp"
#include "hqe/special.hpp"
#include "hqe/transforms.hpp"

using namespace hqe;

TEST_CASE("spherical function: three representations") {
    for (double lambda : {0.3, 1.0, 2.5}) {
        CHECK(spherical_phi(lambda, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (double t : {0.6, 1.2, 1.6}) {
            const double integral = spherical_phi(lambda, t);
            CHECK(spherical_phi_hypergeometric(lambda, t) == doctest::Approx(integral).epsilon(1e-9).scale(1.0));
            CHECK(spherical_phi_series(lambda, t).value == doctest::Approx(integral).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("series tail bound covers the truncation error") {
    const double exact = spherical_phi(1.0, 0.8);
    const SeriesValue s = spherical_phi_series(1.0, 0.8, 14, 0.5);
    CHECK(std::abs(s.value - exact) <= s.tail_bound + 1e-12);
}

TEST_CASE("spherical table matches pointwise evaluation") {
    const std::vector<double> lambdas{0.5, 1.5, 3.0}, weights{1.0, -2.0, 0.5};
    const SphericalTable table(lambdas, weights);
    for (double t : {1.0, 4.0, 12.0}) {
        double expect = 0;
        for (std::size_t j = 0; j < lambdas.size(); ++j) expect += weights[j] * spherical_phi(lambdas[j], t);
        CHECK(table.weighted_sum(t) == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("Harish-Chandra c-function modulus") {
    for (double lambda : {0.1, 0.5, 1.0, 4.0}) {
        const HarishChandra c = harish_chandra_c(lambda);
        CHECK(c.inv_abs2 == doctest::Approx(pi * lambda * std::tanh(pi * lambda)).epsilon(1e-10));
        CHECK(1.0 / std::norm(c.c) == doctest::Approx(c.inv_abs2).epsilon(1e-10));
    }
    CHECK_THROWS_AS(harish_chandra_c(0.0), DomainError);
}

TEST_CASE("weight conventions are consistent rescalings") {
    const PlancherelWeight harmonic = PlancherelWeight::parse("harmonic"), doubled = PlancherelWeight::parse("paper");
    CHECK(harmonic(1.3) == doctest::Approx(pi * 1.3 * std::tanh(pi * 1.3)));
    CHECK(doubled(1.3) == doctest::Approx(1.3 * std::tanh(two_pi * 1.3)));
    CHECK(harmonic.selberg_constant() == doctest::Approx(1.0 / pi));
    CHECK_THROWS(PlancherelWeight::parse("other"));
}

TEST_CASE("sharp ball kernel: Selberg route against the Abel route") {
    for (double t : {1.0, 3.0}) {
        const RadialKernel k = sharp_ball_kernel(t);
        for (double lambda : {0.5, 2.0}) {
            const double selberg = selberg_value(k, lambda, abel_route_normalization);
            CHECK(fourier_of_abel(abel_sharp(t), lambda) == doctest::Approx(selberg).epsilon(1e-7).scale(1.0));
            CHECK(fourier_of_abel(abel_transform(k), lambda) == doctest::Approx(selberg).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("Abel transform of a radial kernel is even and supported on [-T, T]") {
    const RadialKernel k = smooth_ball_kernel(2.0, 0.3);
    const AbelProfile g = abel_transform(k);
    CHECK(g(1.1) == doctest::Approx(g(-1.1)));
    CHECK(g(2.5) == 0.0);
}

TEST_CASE("inverse Selberg transform inverts the forward one") {
    const PlancherelWeight weight = PlancherelWeight::parse("harmonic");
    const SpectralMultiplier rho = bump_multiplier(1.0, 2.0);
    const RadialKernel k = inverse_selberg(rho, weight);
    for (double lambda : {1.2, 1.5, 1.8})
        CHECK(selberg_value(k, lambda, weight.selberg_constant()) == doctest::Approx(rho(lambda)).epsilon(1e-6).scale(1.0));
    CHECK(std::abs(selberg_value(k, 0.5, weight.selberg_constant())) < 1e-6);
}

TEST_CASE("the tanh(2 pi lambda) weight is a near inverse only") {
    // it differs from |c|^{-2} by O(e^{-2 pi lambda}), so the round trip is off at the 1e-3 level
    const PlancherelWeight weight = PlancherelWeight::parse("paper");
    const SpectralMultiplier rho = bump_multiplier(1.0, 2.0);
    const RadialKernel k = inverse_selberg(rho, weight);
    const double gap = std::abs(selberg_value(k, 1.2, weight.selberg_constant()) - rho(1.2));
    CHECK(gap > 1e-5);
    CHECK(gap < 5e-3);
}

TEST_CASE("Selberg transform of a kernel is real and even in lambda") {
    const RadialKernel k = smooth_ball_kernel(1.5, 0.2);
    const SpectralMultiplier h = selberg_transform(k, abel_route_normalization);
    CHECK(h(-1.3) == doctest::Approx(h(1.3)));
    CHECK(h(1e-6) == doctest::Approx(selberg_value(k, 1e-6, abel_route_normalization)));
}

TEST_CASE("bump multiplier is supported on its interval") {
    const SpectralMultiplier rho = bump_multiplier(1.0, 2.0);
    CHECK(rho(0.99) == 0.0);
    CHECK(rho(2.01) == 0.0);
    CHECK(rho(1.5) > 0.0);
}
