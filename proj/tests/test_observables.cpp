#include "doctest.h"

#include <cmath>

#include "hqe/observables.hpp"
#include "hqe/presets.hpp"

using namespace hqe;

TEST_CASE("multiplication observable") {
    const Observable A = multiplication_observable("x", [](const DiscPoint& z) { return z.re(); }, 1.0);
    const DiscPoint z(0.3, -0.2);
    CHECK(A.apply(ScalarField([](const DiscPoint&) { return 2.0; }), z) == doctest::Approx(0.6));
    const Symbol a = symbol_of(A);
    // the symbol of a multiplication operator does not see lambda or b
    CHECK(std::abs(a.eval(z, 1.0, BoundaryPoint(0.3)) - cplx(0.3)) < 1e-12);
    CHECK(std::abs(a.eval(z, 2.0, BoundaryPoint(2.0)) - cplx(0.3)) < 1e-12);
}

TEST_CASE("plane waves are Laplace eigenfunctions") {
    const Observable L = laplacian_observable();
    for (double lambda : {0.5, 1.3})
        for (double angle : {0.0, 2.0}) {
            const BoundaryPoint b(angle);
            const ComplexField u = [&](const DiscPoint& z) { return plane_wave(z, lambda, b); };
            const DiscPoint z(0.2, 0.35);
            const cplx Lu = L.apply(u, z);
            CHECK(std::abs(Lu - (0.25 + lambda * lambda) * u(z)) < 1e-6 * std::abs(u(z)));
            CHECK(std::abs(complete_symbol(L, z, lambda, b) - cplx(0.25 + lambda * lambda)) < 1e-6);
        }
}

TEST_CASE("frame jet of a quadratic") {
    // u = x^2 + 3 y at the origin, where the frame scale is 1/2
    const ComplexField u = [](const DiscPoint& z) { return cplx(z.re() * z.re() + 3 * z.im()); };
    const FrameJet j = frame_jet(u, DiscPoint());
    CHECK(std::abs(j.dx) < 1e-9);
    CHECK(std::abs(j.dy - 1.5) < 1e-9);
    CHECK(std::abs(j.dxx - 0.5) < 1e-6);
    CHECK(std::abs(j.dxy) < 1e-6);
    CHECK_THROWS_AS(frame_jet(u, DiscPoint(1.0 - 1e-11, 0.0)), StencilOutOfDomain);
}

TEST_CASE("direction angle inverts boundary_direction") {
    const DiscPoint z(-0.4, 0.1);
    for (double theta : {0.1, 1.0, 3.0, 5.5})
        CHECK(std::remainder(direction_angle(z, boundary_direction(z, theta)) - theta, two_pi) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("angular decomposition removes the mean") {
    const Symbol a{[](const DiscPoint&, double, const BoundaryPoint& b) { return cplx(2.0 + std::cos(3 * b.angle())); }};
    const AngularDecomposition d = angular_decompose(a, DiscPoint(), 1.0);
    CHECK(std::abs(d.mean - cplx(2.0)) < 1e-10);
    CHECK(d.residual_mean < 1e-10);
    const A1Check c = condition_a1(Symbol{[](const DiscPoint&, double, const BoundaryPoint& b) {
                                       return cplx(std::sin(b.angle()));
                                   }},
                                   DiscPoint(), 1.0);
    CHECK(c.holds);
}

TEST_CASE("limit term of a constant is the constant") {
    Observable A = multiplication_observable("c", [](const DiscPoint&) { return 1.0; }, 1.0);
    A.multiplier_mean = 1.0;
    const SampleRegion region = SampleRegion::of_group(FuchsianGroup::bolza());
    const Estimate e = limit_term(A, 1.5, region, 200, 1);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sandwich kernel has finite range and respects its bound") {
    const Observable A = multiplication_observable("x", [](const DiscPoint& z) { return z.re(); }, 1.0);
    const double t = 1.0, sigma = 0.2;
    CHECK(smooth_sandwich_kernel(A, t, sigma, DiscPoint(), polar_point(DiscPoint(), 2 * t + 0.01, 0.5)) == 0.0);
    const SandwichBound bound = sandwich_sup_bound(A, t, sigma);
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        const DiscPoint z = sample_ball(DiscPoint(), 0.5, rng), w = sample_ball(z, 2 * t, rng);
        CHECK(std::abs(smooth_sandwich_kernel(A, t, sigma, z, w)) <= bound.value);
    }
}

TEST_CASE("declared locality constants hold") {
    const Observable A = multiplication_observable("x", [](const DiscPoint& z) { return z.re(); }, 1.0);
    CHECK(verify_locality(A, 10, 3).pass);
    CHECK(verify_locality(laplacian_observable(), 10, 3).pass);
}

TEST_CASE("shipped presets") {
    const auto presets = load_presets(HQE_PRESETS);
    CHECK(presets.size() == 4);
    CHECK(find_preset(presets, "bolza_bump").observable.kind == ObservableKind::multiplication);
    CHECK(find_preset(presets, "minus_laplacian").observable.locality.k == 2);
    CHECK_THROWS(find_preset(presets, "missing"));
    CHECK_THROWS_AS(parse_presets("{\"observables\": 3}"), FormatError);
    CHECK_THROWS_AS(parse_presets("not json"), FormatError);
}
