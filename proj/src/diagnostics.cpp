#include "hqe/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "hqe/rng.hpp"

namespace hqe {

namespace {

GroupElement random_element(Rng& rng, double max_rho) {
    const double rho = rng.uniform(0.0, max_rho);
    return GroupElement(std::polar(std::cosh(rho), rng.uniform(0.0, two_pi)),
                        std::polar(std::sinh(rho), rng.uniform(0.0, two_pi)));
}

DiscPoint random_point(Rng& rng, double max_norm) {
    return DiscPoint(std::polar(std::tanh(0.5 * rng.uniform(0.0, max_norm)), rng.uniform(0.0, two_pi)));
}

double angle_gap(double a, double b) { return std::remainder(a - b, two_pi); }

// d(g.b)/db in the boundary angle by the five-point stencil
double boundary_derivative_fd(const GroupElement& g, double theta, double step = 1e-5) {
    const double base = mobius_apply(g, BoundaryPoint(theta)).angle();
    auto f = [&](double k) { return angle_gap(mobius_apply(g, BoundaryPoint(theta + k * step)).angle(), base); };
    return (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * step);
}

double element_gap(const GroupElement& a, const GroupElement& b) {
    const double same = std::max(std::abs(a.alpha() - b.alpha()), std::abs(a.beta() - b.beta()));
    const double flip = std::max(std::abs(a.alpha() + b.alpha()), std::abs(a.beta() + b.beta()));
    return std::min(same, flip);
}

double unit_bump(double x) { return std::abs(x) >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - x * x)); }

}  // namespace

GeometryIdentityReport geometry_identity_check(std::size_t samples, std::uint64_t seed) {
    GeometryIdentityReport rep;
    rep.samples = samples;
    Rng rng(seed);
    const DiscPoint origin(0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const GroupElement g = random_element(rng, 1.5);
        const DiscPoint z = random_point(rng, 3.0);
        const DiscPoint w = random_point(rng, 3.0);
        const double theta = rng.uniform(0.0, two_pi);
        const BoundaryPoint b(theta);
        const BoundaryPoint gb = mobius_apply(g, b);
        const DiscPoint gz = mobius_apply(g, z);

        rep.cocycle = std::max(rep.cocycle,
                               std::abs(busemann(gz, gb) - busemann(z, b) - busemann(mobius_apply(g, origin), gb)));

        const double lhs = poisson_weight(gz, gb) * std::abs(boundary_derivative_fd(g, theta));
        const double rhs = poisson_weight(z, b);
        rep.poisson = std::max(rep.poisson, std::abs(lhs - rhs) / std::max(1.0, rhs));

        rep.ank_round_trip = std::max(rep.ank_round_trip, element_gap(ank_compose(ank_decompose(g)), g));
        const AnkCoords c{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(0.0, two_pi)};
        const AnkCoords back = ank_decompose(ank_compose(c));
        rep.ank_round_trip = std::max({rep.ank_round_trip, std::abs(back.s - c.s), std::abs(back.u - c.u),
                                       std::abs(angle_gap(back.theta, c.theta))});

        const double s = rng.uniform(-3.0, 3.0), u = rng.uniform(-3.0, 3.0);
        const DiscPoint p = mobius_apply(a_flow(s) * n_flow(u), origin);
        const double measured = 1.0 + 2.0 * std::norm(p.z()) / p.one_minus_r2();
        const double formula = 0.5 * (u * u * std::exp(s) + 2.0 * std::cosh(s));
        rep.cosh_distance = std::max(rep.cosh_distance, std::abs(measured - formula) / formula);

        rep.isometry = std::max(rep.isometry, std::abs(hyp_distance(gz, mobius_apply(g, w)) - hyp_distance(z, w)));
    }
    rep.pass = rep.cocycle <= rep.tolerance && rep.poisson <= rep.tolerance && rep.ank_round_trip <= rep.tolerance &&
               rep.cosh_distance <= rep.tolerance && rep.isometry <= rep.tolerance;
    return rep;
}

SphericalReport spherical_dual_check(const std::vector<double>& lambdas, const std::vector<double>& ts) {
    SphericalReport rep;
    for (double l : lambdas) {
        for (double t : ts) {
            SphericalRow row{l, t, spherical_phi(l, t), spherical_phi_series(l, t).value, 0.0};
            row.diff = std::abs(row.integral - row.series);
            rep.max_diff = std::max(rep.max_diff, row.diff);
            rep.rows.push_back(row);
        }
        const double err = std::abs(harish_chandra_c(l).inv_abs2 - pi * l * std::tanh(pi * l));
        rep.c_lambdas.push_back(l);
        rep.c_error.push_back(err);
        rep.max_c_error = std::max(rep.max_c_error, err);
    }
    rep.pass = rep.max_diff <= 1e-6 && rep.max_c_error <= 1e-10;
    return rep;
}

TriangleReport transform_triangle(const std::vector<double>& ts, const std::vector<double>& lambdas, double sigma) {
    TriangleReport rep;
    for (double t : ts) {
        const RadialKernel sharp = sharp_ball_kernel(t);
        const RadialKernel smooth = smooth_ball_kernel(t, sigma);
        const AbelProfile sharp_numeric = abel_transform(sharp), sharp_closed = abel_sharp(t);
        const AbelProfile smooth_numeric = abel_transform(smooth), smooth_closed = abel_smooth(t, sigma, default_eta);
        for (double l : lambdas) {
            for (int which = 0; which < 2; ++which) {
                TriangleRow row;
                row.kernel = which == 0 ? "sharp" : "smooth";
                row.t = t;
                row.lambda = l;
                row.selberg = selberg_value(which == 0 ? sharp : smooth, l, abel_route_normalization);
                row.abel_numeric = fourier_of_abel(which == 0 ? sharp_numeric : smooth_numeric, l);
                row.abel_closed = fourier_of_abel(which == 0 ? sharp_closed : smooth_closed, l);
                row.diff = std::max(std::abs(row.selberg - row.abel_numeric), std::abs(row.selberg - row.abel_closed));
                rep.max_diff = std::max(rep.max_diff, row.diff);
                rep.rows.push_back(row);
            }
        }
    }
    // radial bump of hyperbolic radius 2 about the origin
    const double radius = 2.0;
    RadialKernel profile;
    profile.eval = [radius](double r) { return unit_bump(r / radius); };
    profile.support = radius;
    const auto hat = helgason_forward([&](const DiscPoint& z) { return profile(hyp_norm(z)); }, radius);
    for (double l : lambdas) {
        const double pairing = std::abs(selberg_value(profile, l, two_pi));
        const cplx first = hat(l, BoundaryPoint(0.0));
        for (double angle : {0.0, 1.0, 2.5, 4.0}) {
            const cplx v = hat(l, BoundaryPoint(angle));
            rep.helgason_anisotropy = std::max(rep.helgason_anisotropy, std::abs(v - first));
            rep.helgason_diff = std::max(rep.helgason_diff, std::abs(std::abs(v) - pairing));
        }
    }
    rep.pass = rep.max_diff <= 1e-6 && rep.helgason_diff <= 1e-6 && rep.helgason_anisotropy <= 1e-8;
    return rep;
}

DecayReport kernel_decay(const std::vector<Interval>& bumps, int max_N, const PlancherelWeight& weight) {
    DecayReport rep;
    InverseSelbergOptions refined;
    refined.order *= 2;
    for (const Interval& iv : bumps) {
        const SpectralMultiplier rho = bump_multiplier(iv.lo, iv.hi);
        const RadialKernel k = inverse_selberg(rho, weight);
        const RadialKernel k2 = inverse_selberg(rho, weight, refined);
        for (int N = 0; N <= max_N; ++N) {
            DecayRow row;
            row.bump = iv;
            row.N = N;
            auto envelope = [N](const RadialKernel& kk, double t) {
                return std::abs(kk(t)) * std::exp(0.5 * t) * std::pow(1.0 + t, N);
            };
            for (int i = 0; i <= 1950; ++i) {
                const double t = 1.0 + 0.02 * i;
                const double v = envelope(k, t);
                if (v > row.sup) {
                    row.sup = v;
                    row.argmax = t;
                }
            }
            for (int i = 0; i <= 3900; ++i) row.sup_refined = std::max(row.sup_refined, envelope(k2, 1.0 + 0.01 * i));
            row.rel_change = std::abs(row.sup_refined - row.sup) / row.sup;
            rep.max_rel_change = std::max(rep.max_rel_change, row.rel_change);
            rep.rows.push_back(row);
        }
    }
    rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                           [](const DecayRow& r) { return std::isfinite(r.sup) && r.rel_change < 0.01; });
    return rep;
}

AbelInnerReport abel_inner_matrix(const std::vector<double>& radii, const std::vector<double>& lambdas, Interval I,
                              const std::vector<double>& sigmas, const std::vector<double>& ts) {
    AbelInnerReport rep;
    rep.radii = radii;
    rep.lambdas = lambdas;
    for (double l : lambdas) {
        std::vector<double> row;
        for (double r : radii) row.push_back(abel_inner_bound(l, r));
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        rep.ratio.push_back(*hi / *lo);
        rep.values.push_back(std::move(row));
    }
    // the quantity oscillates through zero in r for each fixed lambda, so
    // growth is judged on the sup over the frequency set
    for (std::size_t j = 0; j < radii.size(); ++j) {
        double sup = 0.0;
        for (const auto& row : rep.values) sup = std::max(sup, row[j]);
        rep.sup_over_lambda.push_back(sup);
    }
    const auto [lo, hi] = std::minmax_element(rep.sup_over_lambda.begin(), rep.sup_over_lambda.end());
    rep.max_ratio = *hi / *lo;
    rep.bounded = rep.max_ratio < 10.0;

    rep.I = I;
    const double t_max = *std::max_element(ts.begin(), ts.end());
    rep.constant = abel_inner_constant(I, {1.0, t_max}).value;
    const auto grid = lambda_grid(I, 0.05);
    rep.envelope_holds = true;
    for (double sigma : sigmas)
        for (double t : ts) {
            AbelInnerReport::EnvelopeRow row;
            row.sigma = sigma;
            row.t = t;
            row.envelope = 4.0 * rep.constant * (1.0 - std::exp(-0.5 * sigma));
            for (double l : grid) {
                const DeltaH d = delta_h(t, sigma, l);
                row.route_diff = std::max(row.route_diff, std::abs(d.formula - d.subtraction));
                if (std::abs(d.subtraction) > row.delta_h) {
                    row.delta_h = std::abs(d.subtraction);
                    row.lambda_at = l;
                }
            }
            if (!(row.delta_h <= row.envelope)) rep.envelope_holds = false;
            rep.envelope.push_back(row);
        }
    rep.pass = rep.bounded && rep.envelope_holds;
    return rep;
}

OrbitReport orbit_check(double radius, int oracle_length) {
    OrbitReport rep;
    rep.radius = radius;
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const OrbitBall ball = orbit_enumerate(bolza, DiscPoint(0.0), radius, oracle_length);
    const OrbitBall wider = orbit_enumerate(bolza, DiscPoint(0.0), radius, oracle_length + 2);
    rep.ball_count = ball.elements.size();
    rep.completeness_added = wider.elements.size() - ball.elements.size();
    const WordOracle oracle = word_oracle(bolza, radius, oracle_length);
    rep.oracle_count = oracle.distinct_within;
    rep.systole = systole(bolza);
    rep.systole_oracle = oracle.systole_upper;
    for (double L : {0.5, 1.0, 2.0}) {
        const InjRad ir = injectivity_radius_at(FuchsianGroup::cyclic(L), DiscPoint(0.0), 3.0 * L);
        rep.cyclic_L.push_back(L);
        rep.cyclic_injrad.push_back(ir.value);
        rep.cyclic_error = std::max(rep.cyclic_error, std::abs(ir.value - 0.5 * L));
    }
    rep.pass = rep.ball_count == rep.oracle_count && rep.completeness_added == 0 && rep.cyclic_error <= 1e-9 &&
               std::abs(rep.systole - rep.systole_oracle) <= 1e-6;
    return rep;
}

HsMatrixReport hs_bound_matrix(std::size_t n_mc, std::uint64_t seed) {
    struct GroupCase {
        FuchsianGroup group;
        double region_radius;
    };
    const std::vector<GroupCase> groups{{FuchsianGroup::trivial(), 1.0},
                                        {FuchsianGroup::cyclic(2.0), 0.8},
                                        {FuchsianGroup::bolza(), 0.0}};
    RadialKernel gaussian;
    gaussian.eval = [](double t) { return std::exp(-t * t); };
    RadialKernel bump;
    bump.eval = [](double t) { return unit_bump(t / 1.5); };
    bump.support = 1.5;
    const std::vector<std::pair<std::string, RadialKernel>> kernels{{"gaussian", gaussian}, {"bump", bump}};
    HsMatrixReport rep;
    rep.pass = true;
    std::uint64_t stream = 0;
    for (const auto& gc : groups)
        for (const auto& [name, k] : kernels)
            for (double r : {1.0, 2.0}) {
                HsCase c;
                c.group = gc.group.label;
                c.kernel = name;
                c.r = r;
                c.report = hs_bound_check(k, gc.group, r, n_mc, seed + stream++, gc.region_radius);
                rep.pass = rep.pass && c.report.pass;
                rep.cases.push_back(std::move(c));
            }
    return rep;
}

}  // namespace hqe
