#include "doctest.h"

#include <cmath>
#include <set>

#include "hqe/fuchsian.hpp"
#include "hqe/propagators.hpp"

using namespace hqe;

TEST_CASE("Bolza relator and Dirichlet domain") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    CHECK(bolza.rank() == 4);
    CHECK(bolza.evaluate(bolza.relator).approx_equal(GroupElement::identity(), 1e-9));
    const DirichletDomain dom = dirichlet_domain(bolza);
    CHECK(dom.vertices.size() == 8);
    CHECK(dom.area == doctest::Approx(4 * pi).epsilon(1e-10));
    double angle_sum = 0;
    for (double a : dom.angles) angle_sum += a;
    CHECK(angle_sum == doctest::Approx(two_pi).epsilon(1e-10));
    for (std::size_t k = 0; k < dom.partner.size(); ++k) {
        CHECK(dom.partner[dom.partner[k]] == static_cast<int>(k));
        CHECK((dom.side_elements[k] * dom.side_elements[dom.partner[k]]).approx_equal(GroupElement::identity()));
    }
}

TEST_CASE("reduction into the Dirichlet domain") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const DirichletDomain dom = dirichlet_domain(bolza);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const DiscPoint z = sample_ball(DiscPoint(), 4.0, rng);
        const auto red = dom.reduce(z);
        CHECK(dom.contains(red.point, 1e-9));
        CHECK(std::abs(mobius_apply(red.g, red.point).z() - z.z()) < 1e-9);
        CHECK(bolza.evaluate(red.word).approx_equal(red.g, 1e-7));
    }
}

TEST_CASE("orbit ball against the word oracle") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const OrbitBall ball = orbit_enumerate(bolza, DiscPoint(), 2.5, 8);
    CHECK(ball.elements.front().displacement == 0.0);
    for (std::size_t i = 1; i < ball.elements.size(); ++i) {
        CHECK(ball.elements[i].displacement >= ball.elements[i - 1].displacement);
        CHECK(ball.elements[i].displacement <= 2.5);
    }
    CHECK(ball.elements.size() == word_oracle(bolza, 2.5, 6).distinct_within);
}

TEST_CASE("orbit enumeration respects its budget") {
    EnumerationOptions opt;
    opt.budget = 50;
    CHECK_THROWS_AS(orbit_enumerate(FuchsianGroup::bolza(), DiscPoint(), 6.0, 12, opt), BudgetExceeded);
}

TEST_CASE("systoles") {
    CHECK(systole(FuchsianGroup::cyclic(1.7)) == doctest::Approx(1.7));
    CHECK(std::isinf(systole(FuchsianGroup::trivial())));
    // 2 acosh(1 + sqrt 2)
    CHECK(systole(FuchsianGroup::bolza()) == doctest::Approx(2 * std::acosh(1 + std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("cyclic injectivity radius is half the translation length on the axis") {
    for (double L : {0.5, 1.0, 2.0}) {
        const InjRad r = injectivity_radius_at(FuchsianGroup::cyclic(L), DiscPoint(), 3 * L);
        CHECK(r.value == doctest::Approx(L / 2).epsilon(1e-12));
        CHECK_FALSE(r.lower_bound_only);
    }
}

TEST_CASE("random covers") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    for (int d : {2, 5, 8}) {
        const CoverSurface c = random_cover(bolza, d, 42);
        CHECK(is_transitive(c));
        CHECK(c.volume() == doctest::Approx(4 * pi * d));
        for (const auto& perm : c.permutations) CHECK(std::set<int>(perm.begin(), perm.end()).size() == std::size_t(d));
        // the relator acts trivially on sheets
        for (int s = 0; s < d; ++s) CHECK(c.act(s, bolza.relator) == s);
        CHECK(random_cover(bolza, d, 42).permutations == c.permutations);
    }
}

TEST_CASE("small injectivity radius statistic") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const CoverSurface base = CoverSurface::trivial_cover(bolza);
    const BsEstimate zero = bs_statistic(base, 0.49 * systole(bolza), 500, 1);
    CHECK(zero.exact);
    CHECK(zero.value == 0.0);
    const BsEstimate all = bs_statistic(base, 2.0, 500, 1);
    CHECK(all.value == doctest::Approx(1.0));
    const BsEstimate cover = bs_statistic(random_cover(bolza, 8, 1), 2.0, 500, 1);
    CHECK(cover.value >= 0.0);
    CHECK(cover.value <= 1.0);
}

TEST_CASE("truncated periodisation is symmetric and invariant") {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const RadialKernel k = smooth_ball_kernel(1.0, 0.3);
    auto kernel = [k](const DiscPoint& z, const DiscPoint& w) { return k(hyp_distance(z, w)); };
    const TruncatedPeriodization P = periodize_truncated(kernel, bolza, 2.0);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const DiscPoint z = sample_ball(DiscPoint(), 1.0, rng), w = sample_ball(DiscPoint(), 1.0, rng);
        CHECK(P(z, w) == doctest::Approx(P(w, z)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("HS inequality on one case") {
    const RadialKernel k{[](double t) { return std::exp(-t * t); }, 6.0};
    const HsBoundReport rep = hs_bound_check(k, FuchsianGroup::cyclic(2.0), 1.0, 1000, 7, 0.8);
    CHECK(rep.lhs.value > 0.0);
    CHECK(rep.pass);
}
