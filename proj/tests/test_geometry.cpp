#include "doctest.h"

#include <cmath>

#include "hqe/geometry.hpp"
#include "hqe/rng.hpp"

using namespace hqe;

namespace {

DiscPoint random_point(Rng& rng, double max_radius = 0.95) {
    const double r = max_radius * std::sqrt(rng.uniform());
    return DiscPoint(std::polar(r, two_pi * rng.uniform()));
}

GroupElement random_isometry(Rng& rng) {
    return translation_to(random_point(rng)) * k_rotation(two_pi * rng.uniform());
}

}  // namespace

TEST_CASE("disc points refuse the boundary") {
    CHECK_THROWS_AS(DiscPoint(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(DiscPoint(0.6, 0.8), DomainError);
    CHECK_NOTHROW(DiscPoint(0.999, 0.0));
}

TEST_CASE("distance to the origin") {
    for (double r : {0.0, 0.1, 0.5, 0.9, 0.999}) CHECK(hyp_norm(DiscPoint(r, 0.0)) == doctest::Approx(2 * std::atanh(r)));
}

TEST_CASE("group law") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g = random_isometry(rng), h = random_isometry(rng);
        const DiscPoint z = random_point(rng);
        const cplx lhs = (g * h).apply(z.z());
        const cplx rhs = g.apply(h.apply(z.z()));
        CHECK(std::abs(lhs - rhs) < 1e-12);
        CHECK((g * g.inverse()).approx_equal(GroupElement::identity()));
    }
}

TEST_CASE("isometries preserve distance") {
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        const GroupElement g = random_isometry(rng);
        const DiscPoint z = random_point(rng), w = random_point(rng);
        const double d = hyp_distance(z, w);
        CHECK(hyp_distance(mobius_apply(g, z), mobius_apply(g, w)) == doctest::Approx(d).epsilon(1e-10));
    }
}

TEST_CASE("disc and half-plane distances agree through the Cayley map") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const cplx p(rng.uniform(-3, 3), rng.uniform(0.05, 4)), q(rng.uniform(-3, 3), rng.uniform(0.05, 4));
        CHECK(hyp_distance(cayley(p), cayley(q)) == doctest::Approx(half_plane_distance(p, q)).epsilon(1e-10));
        CHECK(std::abs(cayley_inverse(cayley(p)) - p) < 1e-10 * (1 + std::abs(p)));
    }
}

TEST_CASE("sl2r conversion round trip") {
    const GroupElement g = GroupElement::from_sl2r(2.0, 1.0, 3.0, 2.0);
    const auto m = g.to_sl2r();
    CHECK(m[0] * m[3] - m[1] * m[2] == doctest::Approx(1.0));
    CHECK(GroupElement::from_sl2r(m[0], m[1], m[2], m[3]).approx_equal(g));
    // trace 4 gives translation length 2 acosh(2)
    CHECK(g.translation_length() == doctest::Approx(2 * std::acosh(2.0)));
}

TEST_CASE("Busemann cocycle and Poisson kernel") {
    Rng rng(14);
    for (int i = 0; i < 300; ++i) {
        const GroupElement g = random_isometry(rng);
        const DiscPoint z = random_point(rng, 0.8);
        const BoundaryPoint b(two_pi * rng.uniform());
        const BoundaryPoint gb = mobius_apply(g, b);
        const double lhs = busemann(mobius_apply(g, z), gb);
        const double rhs = busemann(z, b) + busemann(mobius_apply(g, DiscPoint()), gb);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
        CHECK(poisson_weight(z, b) == doctest::Approx(std::exp(busemann(z, b))).epsilon(1e-10));
        // P(gz, gb) |d(gb)/db| = P(z, b)
        CHECK(poisson_weight(mobius_apply(g, z), gb) * boundary_derivative(g, b) ==
              doctest::Approx(poisson_weight(z, b)).epsilon(1e-9));
    }
}

TEST_CASE("ANK decomposition") {
    Rng rng(15);
    for (int i = 0; i < 300; ++i) {
        const AnkCoords c{rng.uniform(-3, 3), rng.uniform(-3, 3), two_pi * rng.uniform()};
        const AnkCoords back = ank_decompose(ank_compose(c));
        CHECK(back.s == doctest::Approx(c.s).epsilon(1e-10).scale(1.0));
        CHECK(back.u == doctest::Approx(c.u).epsilon(1e-10).scale(1.0));
        CHECK(std::remainder(back.theta - c.theta, two_pi) == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
        // cosh d(0, a_s n_u 0) = (u^2 e^s + 2 cosh s) / 2
        const GroupElement an = a_flow(c.s) * n_flow(c.u);
        const double d = hyp_norm(mobius_apply(an, DiscPoint()));
        CHECK(std::cosh(d) == doctest::Approx((c.u * c.u * std::exp(c.s) + 2 * std::cosh(c.s)) / 2).epsilon(1e-10));
    }
}

TEST_CASE("flows and unit tangent vectors") {
    Rng rng(16);
    const GroupElement g = random_isometry(rng);
    // geodesic flow moves the base point by |s|
    for (double s : {0.3, 1.0, 2.5}) {
        const UnitTangent v0 = to_unit_tangent(g), v1 = to_unit_tangent(flow(g, FlowKind::geodesic, s));
        CHECK(hyp_distance(v0.base, v1.base) == doctest::Approx(s).epsilon(1e-10));
        CHECK(std::remainder(v0.dir.angle() - v1.dir.angle(), two_pi) == doctest::Approx(0.0).scale(1.0));
    }
    // rotations fix the base point
    const UnitTangent r = to_unit_tangent(flow(g, FlowKind::rotation, 1.0));
    CHECK(hyp_distance(r.base, to_unit_tangent(g).base) < 1e-10);
    CHECK(from_unit_tangent(to_unit_tangent(g)).approx_equal(g, 1e-9));
}

TEST_CASE("polar points sit at the requested distance") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const DiscPoint c = random_point(rng, 0.7);
        const double rho = rng.uniform(0.01, 3.0);
        CHECK(hyp_distance(c, polar_point(c, rho, two_pi * rng.uniform())) == doctest::Approx(rho).epsilon(1e-10));
        CHECK(hyp_distance(mobius_apply(translation_to(c), DiscPoint()), c) < 1e-12);
    }
}
