#include "doctest.h"

#include <cmath>

#include "hqe/propagators.hpp"
#include "hqe/quadrature.hpp"
#include "hqe/special.hpp"

using namespace hqe;

TEST_CASE("cutoff eta") {
    CHECK(default_eta(-2.0) == 1.0);
    CHECK(default_eta(-1.0) == 1.0);
    CHECK(default_eta(0.0) == 0.0);
    CHECK(default_eta(-0.5) == doctest::Approx(0.5));
    // monotone and C^2 at the ends
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = default_eta(-1.0 + i / 100.0);
        CHECK(v <= prev);
        prev = v;
    }
    const double e = 1e-4;
    CHECK(std::abs(default_eta(-e) - 0.0) < 20 * e * e * e);
    CHECK(std::abs(default_eta(-1.0 + e) - 1.0) < 20 * e * e * e);
}

TEST_CASE("sharp multiplier: closed form against direct quadrature") {
    for (double t : {0.5, 2.0, 5.0})
        for (double lambda : {0.4, 1.0, 3.0}) {
            const double direct =
                abel_route_normalization *
                integrate([&](double r) { return spherical_phi(lambda, r) * std::sinh(r) / std::sqrt(std::cosh(t)); },
                          {0.0, t}, QuadOptions{})
                    .value;
            CHECK(h_sharp(t, lambda) == doctest::Approx(direct).epsilon(1e-8).scale(1.0));
        }
}

TEST_CASE("vector and scalar multipliers agree") {
    const std::vector<double> lambdas{0.5, 1.1, 1.9};
    const auto vs = h_sharp(3.0, lambdas), vm = h_smooth(3.0, 0.2, lambdas);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        CHECK(vs[j] == doctest::Approx(h_sharp(3.0, lambdas[j])).epsilon(1e-9));
        CHECK(vm[j] == doctest::Approx(h_smooth(3.0, 0.2, lambdas[j])).epsilon(1e-9));
    }
}

TEST_CASE("smooth multiplier tends to the sharp one as sigma shrinks") {
    double prev = 1e300;
    for (double sigma : {0.4, 0.1, 0.025}) {
        const double gap = std::abs(h_smooth(4.0, sigma, 1.3) - h_sharp(4.0, 1.3));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("delta h: formula against subtraction") {
    for (double sigma : {0.3, 0.05})
        for (double lambda : {0.9, 1.7}) {
            const DeltaH d = delta_h(3.0, sigma, lambda);
            CHECK(d.formula == doctest::Approx(d.subtraction).epsilon(1e-8).scale(1.0));
        }
}

TEST_CASE("Abel inner integral is bounded after the e^{r/2} rescaling") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        double hi = 0;
        for (double r = 2; r <= 20; r += 2) hi = std::max(hi, abel_inner_bound(lambda, r));
        CHECK(std::isfinite(hi));
        CHECK(hi < 10.0);
    }
    // lambda = 0 reduces to int_0^r (cosh r - cosh u)^{-1/2} du
    const double r = 1.5;
    // cosh r - cosh u = 2 sinh((r + u)/2) sinh((r - u)/2), singular end handled by tanh-sinh
    const double direct =
        de_integrate([&](double u, double, double to_r) {
            return 1.0 / std::sqrt(2.0 * std::sinh(0.5 * (r + u)) * std::sinh(0.5 * to_r));
        }, 0.0, r, 1e-12)
            .value;
    CHECK(abel_inner_integral(0.0, r) == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("time-averaged multiplier") {
    const std::vector<double> lambdas{1.0, 1.5};
    const AverageMultiplier avg = avg_multiplier_H({5.0, 10.0}, 0.1, lambdas);
    for (std::size_t i = 0; i < avg.T.size(); ++i)
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            CHECK(avg.H[i][j] > 0.0);
            CHECK(avg.H[i][j] <= avg.cap[j] * (1 + 1e-12));
            CHECK(avg.H[i][j] == doctest::Approx(avg_multiplier_H(avg.T[i], 0.1, lambdas[j])).epsilon(1e-6));
        }
}

TEST_CASE("lambda grid spans the interval") {
    const auto g = lambda_grid({0.5, 1.5}, 0.03);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == doctest::Approx(1.5));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] - g[i - 1] <= 0.03 + 1e-12);
}

TEST_CASE("positivity certificate on a short horizon") {
    const Interval I{std::sqrt(0.75), std::sqrt(3.75)};
    const auto cert = positivity_certificate(I, 0.1, {5.0, 10.0}, lambda_grid(I, 0.02), false);
    CHECK(cert.positive);
    for (double c : cert.c_min) CHECK(c > 0.0);
}
