#include "hqe/observables.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "hqe/quadrature.hpp"
#include "hqe/special.hpp"

namespace hqe {

namespace {

double eval_or_zero(const ScalarField& f, const DiscPoint& z) { return f ? f(z) : 0.0; }

double bump(double x) { return std::abs(x) >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - x * x)); }

}  // namespace

FrameJet frame_jet(const ComplexField& u, const DiscPoint& z) {
    const double omr2 = z.one_minus_r2();
    const double h = 1e-3 * omr2;
    if (std::abs(z.z()) + 2.0 * std::sqrt(2.0) * h >= 1.0 - 1e-6)
        throw StencilOutOfDomain("frame_jet: stencil leaves the disc");
    // fourth-order central stencils; the mixed term is the tensor product of
    // the first-derivative stencil
    static constexpr int off[4] = {-2, -1, 1, 2};
    static constexpr double d1[4] = {1.0, -8.0, 8.0, -1.0};  // / 12h
    auto at = [&](int i, int j) { return u(DiscPoint(z.z() + cplx(i * h, j * h))); };
    const cplx f0 = at(0, 0);
    cplx gx = 0.0, gy = 0.0, hxx = -30.0 * f0, hyy = -30.0 * f0, hxy = 0.0;
    static constexpr double d2[4] = {-1.0, 16.0, 16.0, -1.0};  // / 12h^2, centre -30
    for (int a = 0; a < 4; ++a) {
        const cplx fx = at(off[a], 0), fy = at(0, off[a]);
        gx += d1[a] * fx;
        gy += d1[a] * fy;
        hxx += d2[a] * fx;
        hyy += d2[a] * fy;
        for (int b = 0; b < 4; ++b) hxy += d1[a] * d1[b] * at(off[a], off[b]);
    }
    const double s = 0.5 * omr2;
    FrameJet j;
    j.value = f0;
    j.dx = s * gx / (12.0 * h);
    j.dy = s * gy / (12.0 * h);
    j.dxx = s * s * hxx / (12.0 * h * h);
    j.dyy = s * s * hyy / (12.0 * h * h);
    j.dxy = s * s * hxy / (144.0 * h * h);
    return j;
}

PolarRule polar_rule(double radius, const std::vector<double>& breakpoints, int order, int angles) {
    PolarRule rule;
    rule.angles = angles;
    std::vector<double> cuts{0.0, radius};
    for (double b : breakpoints)
        if (b > 0 && b < radius) cuts.push_back(b);
    const auto edges = panel_edges(cuts, 0.5);
    const GaussRule& gl = gauss_legendre(order);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double half = 0.5 * (edges[k + 1] - edges[k]), mid = 0.5 * (edges[k + 1] + edges[k]);
        for (int i = 0; i < order; ++i) {
            const double rho = mid + half * gl.nodes[i];
            rule.rho.push_back(rho);
            rule.rho_weight.push_back(half * gl.weights[i] * std::sinh(rho));
        }
    }
    return rule;
}

namespace {

template <class T, class F>
T finite_range_apply(const Observable& A, const F& u, const DiscPoint& z) {
    const auto rule = polar_rule(A.locality.S, A.radial ? A.radial->breakpoints : std::vector<double>{});
    const GroupElement frame = translation_to(z);
    T sum{};
    for (std::size_t i = 0; i < rule.rho.size(); ++i) {
        const double r = std::tanh(0.5 * rule.rho[i]);
        T ring{};
        for (int k = 0; k < rule.angles; ++k) {
            const DiscPoint y(frame.apply(std::polar(r, two_pi * k / rule.angles)));
            const double kv = A.radial ? (*A.radial)(rule.rho[i]) : A.kernel(z, y);
            ring += kv * u(y);
        }
        sum += rule.rho_weight[i] * ring * (two_pi / rule.angles);
    }
    return sum;
}

cplx differential_apply(const Observable& A, const ComplexField& u, const DiscPoint& z) {
    const FrameJet j = frame_jet(u, z);
    const auto& c = A.coefficients;
    return eval_or_zero(c.c0, z) * j.value + eval_or_zero(c.cx, z) * j.dx + eval_or_zero(c.cy, z) * j.dy +
           eval_or_zero(c.cxx, z) * j.dxx + eval_or_zero(c.cxy, z) * j.dxy + eval_or_zero(c.cyy, z) * j.dyy;
}

}  // namespace

cplx Observable::apply(const ComplexField& u, const DiscPoint& z) const {
    switch (kind) {
        case ObservableKind::multiplication:
            return multiplier(z) * u(z);
        case ObservableKind::finite_range:
            return finite_range_apply<cplx>(*this, u, z);
        case ObservableKind::differential:
            return differential_apply(*this, u, z);
    }
    return 0.0;
}

double Observable::apply(const ScalarField& u, const DiscPoint& z) const {
    if (kind == ObservableKind::multiplication) return multiplier(z) * u(z);
    if (kind == ObservableKind::finite_range) return finite_range_apply<double>(*this, u, z);
    return apply(ComplexField([&u](const DiscPoint& y) { return cplx(u(y), 0.0); }), z).real();
}

Observable multiplication_observable(std::string name, ScalarField a, double sup_abs) {
    Observable A;
    A.kind = ObservableKind::multiplication;
    A.name = std::move(name);
    A.multiplier = std::move(a);
    A.locality = {sup_abs, 0.0, 0};
    return A;
}

Observable radial_kernel_observable(std::string name, const RadialKernel& profile) {
    if (!std::isfinite(profile.support)) throw DomainError("radial_kernel_observable: kernel must have finite range");
    Observable A;
    A.kind = ObservableKind::finite_range;
    A.name = std::move(name);
    A.radial = profile;
    A.kernel = [profile](const DiscPoint& z, const DiscPoint& w) { return profile(hyp_distance(z, w)); };
    const auto rule = polar_rule(profile.support, profile.breakpoints);
    double l1 = 0.0;
    for (std::size_t i = 0; i < rule.rho.size(); ++i) l1 += rule.rho_weight[i] * std::abs(profile(rule.rho[i]));
    A.locality = {two_pi * l1, profile.support, 0};
    return A;
}

Observable differential_observable(std::string name, FrameCoefficients c, int order, double coefficient_sup) {
    if (order < 0 || order > 2) throw DomainError("differential_observable: order must be 0, 1 or 2");
    Observable A;
    A.kind = ObservableKind::differential;
    A.name = std::move(name);
    A.coefficients = std::move(c);
    A.order = order;
    A.locality = {coefficient_sup, 0.0, order};
    return A;
}

Observable laplacian_observable() {
    FrameCoefficients c;
    c.cxx = [](const DiscPoint&) { return -1.0; };
    c.cyy = [](const DiscPoint&) { return -1.0; };
    return differential_observable("minus_laplacian", c, 2, 1.0);
}

Observable orbit_bump_observable(const FuchsianGroup& group, double radius, double amplitude, bool subtract_mean) {
    if (!group.covolume) throw DomainError("orbit_bump_observable: group must be cocompact");
    if (!(radius > 0) || radius > 0.5 * systole(group) + 1e-12)
        throw DomainError("orbit_bump_observable: radius must lie in (0, systole/2]");
    auto domain = std::make_shared<DirichletDomain>(dirichlet_domain(group));
    const double integral =
        two_pi * integrate([radius](double t) { return bump(t / radius) * std::sinh(t); }, {0.0, radius}).value;
    const double mean = amplitude * integral / *group.covolume;
    const double shift = subtract_mean ? mean : 0.0;
    Observable A = multiplication_observable(
        "orbit_bump",
        [domain, radius, amplitude, shift](const DiscPoint& z) {
            return amplitude * bump(hyp_norm(domain->reduce(z).point) / radius) - shift;
        },
        std::max(std::abs(amplitude - shift), std::abs(shift)));
    A.multiplier_mean = mean - shift;
    return A;
}

cplx plane_wave(const DiscPoint& z, double lambda, const BoundaryPoint& b) {
    return std::exp(cplx(0.5, lambda) * busemann(z, b));
}

cplx complete_symbol(const Observable& A, const DiscPoint& z, double lambda, const BoundaryPoint& b) {
    const double base = busemann(z, b);
    const ComplexField wave = [&](const DiscPoint& y) { return std::exp(cplx(0.5, lambda) * (busemann(y, b) - base)); };
    return A.apply(wave, z);
}

Symbol symbol_of(const Observable& A) {
    Symbol s;
    s.eval = [A](const DiscPoint& z, double lambda, const BoundaryPoint& b) { return complete_symbol(A, z, lambda, b); };
    s.derived_from = A.name;
    return s;
}

BoundaryPoint boundary_direction(const DiscPoint& z, double theta) {
    return BoundaryPoint::from_complex(translation_to(z).apply(std::polar(1.0, theta)));
}

double direction_angle(const DiscPoint& z, const BoundaryPoint& b) {
    double a = std::arg(translation_to(z).inverse().apply(b.z()));
    if (a < 0) a += two_pi;
    return a;
}

AngularDecomposition angular_decompose(const Symbol& a, const DiscPoint& z, double lambda) {
    auto f = [&a, z, lambda](double th) { return a.eval(z, lambda, boundary_direction(z, th)); };
    int n = 64;
    cplx prev = periodic_mean(f, n);
    for (;;) {
        n *= 2;
        const cplx cur = periodic_mean(f, n);
        if (std::abs(cur - prev) <= 1e-12 * (1.0 + std::abs(cur))) {
            prev = cur;
            break;
        }
        if (n >= 8192) throw QuadratureNotConverged("angular_decompose: angular mean did not settle");
        prev = cur;
    }
    AngularDecomposition out;
    out.mean = prev;
    out.nodes = n;
    out.zero_mean_part = [f, mean = prev](double th) { return f(th) - mean; };
    out.residual_mean = std::abs(periodic_mean(out.zero_mean_part, n));
    return out;
}

A1Check condition_a1(const Symbol& a, const DiscPoint& z, double lambda, double tol) {
    const auto dec = angular_decompose(a, z, lambda);
    return {two_pi * dec.mean, std::abs(two_pi * dec.mean) <= tol};
}

SampleRegion SampleRegion::of_group(const FuchsianGroup& group) {
    auto dom = std::make_shared<DirichletDomain>(dirichlet_domain(group));
    SampleRegion r;
    r.label = group.label + "/dirichlet";
    r.volume = *group.covolume;
    r.sample = [dom](Rng& rng) { return sample_domain(*dom, rng); };
    return r;
}

SampleRegion SampleRegion::ball(double radius) {
    if (!(radius > 0)) throw DomainError("SampleRegion::ball: radius must be positive");
    SampleRegion r;
    r.label = "ball";
    r.volume = two_pi * (std::cosh(radius) - 1.0);
    r.sample = [radius](Rng& rng) { return sample_ball(DiscPoint(0.0), radius, rng); };
    return r;
}

Estimate theta_second_derivative_norm(const Symbol& a, const std::vector<double>& lambdas, const SampleRegion& region,
                                      std::size_t n_mc, std::uint64_t seed) {
    if (lambdas.empty() || n_mc < 2) throw DomainError("theta_second_derivative_norm: empty grid or sample");
    constexpr double h = 1e-4;
    Estimate best{-1.0, 0.0};
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const double lambda = lambdas[li];
        Rng rng = Rng::stream(seed, li);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n_mc; ++i) {
            const DiscPoint z = region.sample(rng);
            const double th = two_pi * rng.uniform();
            auto f = [&](double x) { return a.eval(z, lambda, boundary_direction(z, x)); };
            const cplx d2 = (-f(th + 2 * h) + 16.0 * f(th + h) - 30.0 * f(th) + 16.0 * f(th - h) - f(th - 2 * h)) /
                            (12.0 * h * h);
            const double v = std::norm(d2);
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / n_mc;
        const double se = std::sqrt(std::max(0.0, sum2 / n_mc - mean * mean) / (n_mc - 1));
        if (mean > best.value) best = {mean, se};
    }
    return best;
}

double smooth_sandwich_kernel(const Observable& A, double t, double sigma, const DiscPoint& z, const DiscPoint& w,
                              const std::function<double(double)>& eta, int order) {
    const double D = hyp_distance(z, w);
    const double S = A.locality.S;
    if (D > 2.0 * t + S) return 0.0;
    const RadialKernel kt = smooth_ball_kernel(t, sigma, eta);
    const ScalarField u_w = [&kt, &w](const DiscPoint& y) { return kt(hyp_distance(y, w)); };
    const double reach = t + S;  // d(x, w) beyond this gives (A u_w)(x) = 0
    const double inner_kink = t - sigma;
    const GroupElement frame = translation_to(z);
    const double toward = D > 1e-14 ? std::arg(frame.inverse().apply(w.z())) : 0.0;
    const double chD = std::cosh(D), shD = std::sinh(D);

    auto arc = [&](double rho, double level) {
        // half-width of the alpha range with d(x, w) <= level
        if (shD < 1e-14 || std::sinh(rho) < 1e-14) return D + rho <= level ? pi : -1.0;
        const double c = (std::cosh(rho) * chD - std::cosh(level)) / (std::sinh(rho) * shD);
        if (c <= -1.0) return pi;
        if (c >= 1.0) return -1.0;
        return std::acos(c);
    };
    auto ring = [&](double rho) {
        const double amax = arc(rho, reach);
        if (amax <= 0.0) return 0.0;
        std::vector<double> cuts{-amax, amax};
        if (S == 0.0 && inner_kink > 0) {
            const double ak = arc(rho, inner_kink);
            if (ak > 0.0 && ak < amax) {
                cuts.push_back(-ak);
                cuts.push_back(ak);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        const double r = std::tanh(0.5 * rho);
        auto g = [&](double alpha) {
            const DiscPoint x(frame.apply(std::polar(r, toward + alpha)));
            return A.apply(u_w, x);
        };
        return gl_composite(g, panel_edges(cuts, 0.5), order);
    };
    std::vector<double> cuts{0.0, t};
    for (double c : {inner_kink, std::abs(reach - D), reach + D, std::abs(inner_kink - D), inner_kink + D})
        if (c > 0.0 && c < t) cuts.push_back(c);
    return gl_composite([&](double rho) { return kt(rho) * ring(rho) * std::sinh(rho); }, panel_edges(cuts, 0.25),
                        order);
}

namespace {

double ck_sum(const FrameJet& j, int k) {
    double v = std::abs(j.value);
    if (k >= 1) v += std::abs(j.dx) + std::abs(j.dy);
    if (k >= 2) v += std::abs(j.dxx) + 2.0 * std::abs(j.dxy) + std::abs(j.dyy);
    return v;
}

}  // namespace

SandwichBound sandwich_sup_bound(const Observable& A, double t, double sigma, const std::function<double(double)>& eta) {
    const RadialKernel kt = smooth_ball_kernel(t, sigma, eta);
    SandwichBound out;
    const int k = A.locality.k;
    for (double wr : {0.0, 0.5, 0.9}) {
        const DiscPoint w(wr);
        const ComplexField f = [&kt, &w](const DiscPoint& v) { return cplx(kt(hyp_distance(v, w)), 0.0); };
        for (int i = 0; i <= 400; ++i) {
            const double r = t * i / 400.0;
            for (int a = 0; a < 8; ++a) {
                const DiscPoint v = polar_point(w, r, two_pi * a / 8.0);
                const double val = k == 0 ? std::abs(f(v)) : ck_sum(frame_jet(f, v), k);
                out.ck_norm = std::max(out.ck_norm, val);
            }
        }
    }
    QuadOptions opt;
    std::vector<double> cuts{0.0, t};
    if (t > sigma) cuts.push_back(t - sigma);
    out.kernel_l1 = two_pi * integrate([&kt](double r) { return std::abs(kt(r)) * std::sinh(r); }, cuts, opt).value;
    out.value = A.locality.C * out.ck_norm * out.kernel_l1;
    return out;
}

LocalityReport verify_locality(const Observable& A, int n_functions, std::uint64_t seed) {
    Rng rng(seed);
    LocalityReport rep;
    rep.declared = A.locality.C;
    rep.functions = n_functions;
    const int k = A.locality.k;
    for (int f = 0; f < n_functions; ++f) {
        ComplexField u;
        if (f % 2 == 0) {
            const double lambda = 3.0 * rng.uniform();
            const BoundaryPoint b(two_pi * rng.uniform());
            u = [lambda, b](const DiscPoint& y) { return cplx(plane_wave(y, lambda, b).real(), 0.0); };
        } else {
            const DiscPoint p = sample_ball(DiscPoint(0.0), 1.5, rng);
            const double width = 0.3 + rng.uniform();
            u = [p, width](const DiscPoint& y) {
                const double d = hyp_distance(y, p) / width;
                return cplx(std::exp(-d * d), 0.0);
            };
        }
        for (int pt = 0; pt < 4; ++pt) {
            const DiscPoint x = sample_ball(DiscPoint(0.0), 2.0, rng);
            const double lhs = std::abs(A.apply(u, x));
            double norm = k == 0 ? std::abs(u(x)) : ck_sum(frame_jet(u, x), k);
            if (A.locality.S > 0) {
                const auto rule = polar_rule(A.locality.S, A.radial ? A.radial->breakpoints : std::vector<double>{});
                const GroupElement frame = translation_to(x);
                for (double rho : rule.rho)
                    for (int a = 0; a < rule.angles; ++a) {
                        const DiscPoint y(frame.apply(std::polar(std::tanh(0.5 * rho), two_pi * a / rule.angles)));
                        norm = std::max(norm, k == 0 ? std::abs(u(y)) : ck_sum(frame_jet(u, y), k));
                    }
            }
            if (norm > 0) rep.max_ratio = std::max(rep.max_ratio, lhs / norm);
        }
    }
    rep.pass = rep.max_ratio <= rep.declared * (1.0 + 1e-6);
    return rep;
}

Estimate limit_term(const Observable& A, double lambda, const SampleRegion& region, std::size_t n_mc,
                    std::uint64_t seed) {
    if (A.kind == ObservableKind::multiplication && A.multiplier_mean) return {*A.multiplier_mean, 0.0};
    if (n_mc < 2) throw DomainError("limit_term: need at least two samples");
    std::function<double(const DiscPoint&)> integrand;
    PolarRule rule;
    std::vector<double> phi_nodes;
    if (A.kind == ObservableKind::multiplication) {
        integrand = [&A](const DiscPoint& x) { return A.multiplier(x); };
    } else if (A.kind == ObservableKind::finite_range) {
        rule = polar_rule(A.locality.S, A.radial ? A.radial->breakpoints : std::vector<double>{});
        for (double rho : rule.rho) phi_nodes.push_back(spherical_phi_fast(lambda, rho));
        integrand = [&](const DiscPoint& x) {
            const GroupElement frame = translation_to(x);
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.rho.size(); ++i) {
                double ringsum = 0.0;
                for (int a = 0; a < rule.angles; ++a) {
                    if (A.radial) {
                        ringsum += (*A.radial)(rule.rho[i]);
                        continue;
                    }
                    const DiscPoint y(frame.apply(std::polar(std::tanh(0.5 * rule.rho[i]), two_pi * a / rule.angles)));
                    ringsum += A.kernel(x, y);
                }
                sum += rule.rho_weight[i] * phi_nodes[i] * ringsum * (two_pi / rule.angles);
            }
            return sum;
        };
    } else {
        integrand = [&A, lambda](const DiscPoint& x) {
            const ComplexField phi = [&x, lambda](const DiscPoint& y) {
                return cplx(spherical_phi_fast(lambda, hyp_distance(x, y)), 0.0);
            };
            return A.apply(phi, x).real();
        };
    }
    Rng rng = Rng::stream(seed, 0);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n_mc; ++i) {
        const double v = integrand(region.sample(rng));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n_mc;
    return {mean, std::sqrt(std::max(0.0, sum2 / n_mc - mean * mean) / (n_mc - 1))};
}

ErrorOpsBounds error_ops_bounds(const Observable& A, const SpectralMultiplier& rho, double r,
                                const CoverSurface& surface, const std::vector<double>& lambdas,
                                std::size_t bs_samples, std::uint64_t seed, const std::function<double(double)>& chi) {
    if (A.kind != ObservableKind::finite_range) throw DomainError("error_ops_bounds: needs a finite-range kernel");
    if (!(r > 0)) throw DomainError("error_ops_bounds: r must be positive");
    ErrorOpsBounds out;
    out.propagation = A.locality.S;
    for (int i = 1; i < 1000; ++i) {
        const double x = i / 1000.0, dx = 1e-6;
        out.chi_prime_factor = std::max(out.chi_prime_factor, std::abs(chi(x + dx) - chi(x - dx)) / (2 * dx));
    }
    out.chi_prime_factor *= out.chi_prime_factor;
    if (A.radial) {
        for (int i = 0; i <= 4000; ++i)
            out.kernel_sup = std::max(out.kernel_sup, std::abs((*A.radial)(out.propagation * i / 4000.0)));
    } else {
        Rng rng(seed);
        for (int i = 0; i < 20000; ++i) {
            const DiscPoint z = sample_ball(DiscPoint(0.0), 1.0, rng);
            out.kernel_sup = std::max(out.kernel_sup, std::abs(A.kernel(z, sample_ball(z, out.propagation, rng))));
        }
    }
    const PlancherelWeight tanh_2pi{WeightVariant::tanh_2pi};
    const double lo = rho.support.lo, hi = std::isfinite(rho.support.hi) ? rho.support.hi : 50.0;
    out.rho_l2 = hi > lo ? integrate([&](double l) { return rho(l) * rho(l) * tanh_2pi(l); }, {lo, hi}).value : 0.0;
    out.systole = systole(surface.base);
    if (out.rho_l2 == 0.0) return out;

    // k_rho normalised so that int k_rho phi_lambda sinh dt = rho(lambda)
    const PlancherelWeight weight{WeightVariant::harmonic_tanh_pi};
    const RadialKernel k_rho = inverse_selberg(rho, weight);
    const double scale = weight.selberg_constant();
    const double support = k_rho.support;
    SphericalTable table(lambdas, std::vector<double>(lambdas.size(), 1.0));
    const std::size_t n = lambdas.size();
    Eigen::ArrayXd tail = Eigen::ArrayXd::Zero(n), exact = Eigen::ArrayXd::Zero(n);
    std::vector<double> phis(n);
    const GaussRule& gl = gauss_legendre(16);
    const auto edges = panel_edges({0.0, std::min(r, support), support}, 0.5);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]), mid = 0.5 * (edges[p + 1] + edges[p]);
        for (int i = 0; i < 16; ++i) {
            const double t = mid + half * gl.nodes[i];
            const double kv = scale * k_rho(t) * std::sinh(t) * half * gl.weights[i];
            table.evaluate(t, phis.data());
            const double cut = 1.0 - chi(t / r);
            for (std::size_t j = 0; j < n; ++j) {
                if (t >= r) tail[j] += std::abs(kv * phis[j]);
                exact[j] += kv * cut * phis[j];
            }
        }
    }
    out.e_bound = tail.maxCoeff();
    out.e_exact = exact.abs().maxCoeff();
    const double D = out.propagation;
    const BsEstimate bs = bs_statistic(surface, r + D, bs_samples, seed);
    out.small_injrad_fraction = bs.value;
    const double vol = surface.volume();
    out.r_hs_bound = (D / r) * (D / r) * out.kernel_sup * out.kernel_sup * out.rho_l2 * std::exp(2.0 * D) *
                     (vol + std::exp(r + D) / out.systole * bs.value * vol);
    return out;
}

}  // namespace hqe
