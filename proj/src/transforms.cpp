#include "hqe/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace hqe {

namespace {

// cosh a - cosh b without cancellation
double cosh_diff(double a, double b) { return 2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (a - b)); }

std::vector<double> finite_cuts(const RadialKernel& k) {
    if (!std::isfinite(k.support)) throw DomainError("radial kernel needs a finite support for this operation");
    std::vector<double> cuts{0.0, k.support};
    for (double b : k.breakpoints)
        if (b > 0 && b < k.support) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

}  // namespace

double PlancherelWeight::operator()(double lambda) const {
    const double l = std::abs(lambda);
    if (variant == WeightVariant::tanh_2pi) return l * std::tanh(two_pi * l);
    return pi * l * std::tanh(pi * l);
}

double PlancherelWeight::selberg_constant() const {
    return variant == WeightVariant::tanh_2pi ? 1.0 : 1.0 / pi;
}

double PlancherelWeight::hs_constant() const { return variant == WeightVariant::tanh_2pi ? 1.0 : pi; }

std::string PlancherelWeight::name() const {
    return variant == WeightVariant::tanh_2pi ? "tanh_2pi" : "harmonic_tanh_pi";
}

PlancherelWeight PlancherelWeight::parse(const std::string& text) {
    if (text == "paper" || text == "tanh_2pi") return {WeightVariant::tanh_2pi};
    if (text == "harmonic" || text == "harmonic_tanh_pi") return {WeightVariant::harmonic_tanh_pi};
    throw DomainError("unknown weight convention '" + text + "'");
}

std::vector<double> selberg_values(const RadialKernel& k, const std::vector<double>& lambdas, double normalization,
                                   const QuadOptions& opt) {
    const auto cuts = finite_cuts(k);
    const Eigen::Index m = static_cast<Eigen::Index>(lambdas.size());
    SphericalTable table(lambdas, std::vector<double>(lambdas.size(), 1.0));
    auto f = [&](double t) -> Eigen::ArrayXd {
        Eigen::ArrayXd phi(m);
        table.evaluate(t, phi.data());
        return phi * (k(t) * std::sinh(t));
    };
    const auto res = integrate_array(f, m, cuts, opt, "selberg_transform");
    std::vector<double> out(lambdas.size());
    for (Eigen::Index j = 0; j < m; ++j) out[j] = normalization * res.value[j];
    return out;
}

double selberg_value(const RadialKernel& k, double lambda, double normalization, const QuadOptions& opt) {
    return selberg_values(k, {lambda}, normalization, opt)[0];
}

SpectralMultiplier selberg_transform(const RadialKernel& k, double normalization) {
    SpectralMultiplier out;
    out.eval = [k, normalization](double lambda) { return selberg_value(k, lambda, normalization); };
    return out;
}

namespace {

class InverseSelberg {
public:
    InverseSelberg(SpectralMultiplier rho, PlancherelWeight weight, InverseSelbergOptions opt)
        : rho_(std::move(rho)), weight_(weight), opt_(opt) {}

    double operator()(double t) const { return table_for(t).weighted_sum(t); }

private:
    // Frequency panels grow with t to follow the oscillation of phi_lambda(t);
    // counts are rounded up to powers of two so only a few tables exist.
    const SphericalTable& table_for(double t) const {
        const double width = rho_.support.width();
        int want = std::max(4, static_cast<int>(std::ceil(t * width / 8.0)));
        want = static_cast<int>(std::ceil(want / opt_.panel_scale));
        int panels = 4;
        while (panels < want) panels *= 2;
        std::lock_guard<std::mutex> lock(mutex_);
        auto& slot = tables_[panels];
        if (!slot) {
            const GaussRule& rule = gauss_legendre(opt_.order);
            std::vector<double> lam, w;
            const double lo = rho_.support.lo, step = width / panels;
            for (int p = 0; p < panels; ++p) {
                const double a = lo + p * step, half = 0.5 * step;
                for (int i = 0; i < opt_.order; ++i) {
                    const double x = a + half * (1.0 + rule.nodes[i]);
                    lam.push_back(x);
                    w.push_back(rule.weights[i] * half * rho_(x) * weight_(x));
                }
            }
            slot = std::make_unique<SphericalTable>(std::move(lam), std::move(w));
        }
        return *slot;
    }

    SpectralMultiplier rho_;
    PlancherelWeight weight_;
    InverseSelbergOptions opt_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::unique_ptr<SphericalTable>> tables_;
};

}  // namespace

RadialKernel inverse_selberg(const SpectralMultiplier& rho, const PlancherelWeight& weight,
                             const InverseSelbergOptions& opt) {
    if (!std::isfinite(rho.support.hi) || rho.support.hi <= rho.support.lo)
        throw DomainError("inverse_selberg: multiplier must have compact support");
    auto impl = std::make_shared<InverseSelberg>(rho, weight, opt);
    // Truncation: |phi_lambda(t)| e^{t/2} stays bounded on the support of
    // rho, so the tail of any pairing int k phi sinh is controlled by the
    // envelope F(t) = |k(t)| e^{t/2}.  Integrate F over windows of length 20
    // and stop once a window carries less than truncation_rel of the mass.
    const double window = 20.0, step = 0.125;
    double mass = 0.0, support = opt.max_support;
    for (double start = 0.0; start < opt.max_support; start += window) {
        double piece = 0.0;
        for (double t = start + 0.5 * step; t < start + window; t += step)
            piece += std::abs((*impl)(t)) * std::exp(0.5 * t) * step;
        mass += piece;
        if (start >= 40.0 && piece < opt.truncation_rel * mass) {
            support = start + window;
            break;
        }
    }
    RadialKernel k;
    k.eval = [impl](double t) { return (*impl)(t); };
    k.support = support;
    return k;
}

AbelProfile abel_transform(const RadialKernel& k) {
    const auto cuts = finite_cuts(k);
    const double support = k.support;
    // Fixed r-panels with cached k(r) sinh(r) values.
    struct Node {
        double r, wk;
    };
    auto edges = std::make_shared<std::vector<double>>(panel_edges(cuts, 0.5));
    auto nodes = std::make_shared<std::vector<std::vector<Node>>>();
    const int order = 24;
    const GaussRule& rule = gauss_legendre(order);
    for (std::size_t p = 0; p + 1 < edges->size(); ++p) {
        const double a = (*edges)[p], b = (*edges)[p + 1], half = 0.5 * (b - a);
        std::vector<Node> panel;
        for (int i = 0; i < order; ++i) {
            const double r = a + half * (1.0 + rule.nodes[i]);
            panel.push_back({r, rule.weights[i] * half * k(r) * std::sinh(r)});
        }
        nodes->push_back(std::move(panel));
    }
    auto breaks = std::make_shared<std::vector<double>>(cuts);
    AbelProfile g;
    g.support = support;
    g.breakpoints = k.breakpoints;
    g.eval = [k, edges, nodes, breaks, support](double u) -> double {
        if (u >= support) return 0.0;
        // first fixed edge at least 0.5 beyond u
        std::size_t first = 0;
        while (first < edges->size() && (*edges)[first] < std::min(u + 0.5, support)) ++first;
        if (first == edges->size()) first = edges->size() - 1;
        const double e = (*edges)[first];
        // near part [u, e] in v with cosh r = cosh u + v^2
        std::vector<double> vcuts{0.0, std::sqrt(cosh_diff(e, u))};
        for (double b : *breaks)
            if (b > u && b < e) vcuts.push_back(std::sqrt(cosh_diff(b, u)));
        std::sort(vcuts.begin(), vcuts.end());
        const double cu = std::cosh(u);
        auto fv = [&](double v) { return 2.0 * k(std::acosh(cu + v * v)); };
        double near = 0.0;
        for (std::size_t j = 0; j + 1 < vcuts.size(); ++j) near += gl_fixed(fv, vcuts[j], vcuts[j + 1], 32);
        double far = 0.0;
        for (std::size_t p = first; p < nodes->size(); ++p)
            for (const Node& nd : (*nodes)[p]) far += nd.wk / std::sqrt(cosh_diff(nd.r, u));
        return std::sqrt(2.0) * (near + far);
    };
    return g;
}

AbelProfile abel_sharp(double t) {
    if (!(t > 0)) throw DomainError("abel_sharp: t must be positive");
    const double pref = std::sqrt(2.0 / std::cosh(t));
    AbelProfile g;
    g.support = t;
    // the substitution makes the inner integral exact: int_0^V 2 dv = 2V
    g.eval = [t, pref](double u) { return u >= t ? 0.0 : pref * 2.0 * std::sqrt(cosh_diff(t, u)); };
    return g;
}

AbelProfile abel_smooth(double t, double sigma, const std::function<double(double)>& eta) {
    if (!(t > 0) || !(sigma > 0)) throw DomainError("abel_smooth: t and sigma must be positive");
    const double pref = std::sqrt(2.0 / std::cosh(t));
    const double inner = t - sigma;
    AbelProfile g;
    g.support = t;
    if (inner > 0) g.breakpoints = {inner};
    g.eval = [t, sigma, eta, pref, inner](double u) -> double {
        if (u >= t) return 0.0;
        const double vmax = std::sqrt(cosh_diff(t, u));
        const double v1 = (inner > u) ? std::sqrt(cosh_diff(inner, u)) : 0.0;
        const double cu = std::cosh(u);
        auto fv = [&](double v) { return eta((std::acosh(cu + v * v) - t) / sigma); };
        QuadOptions opt;
        opt.order = 20;
        opt.max_panel = std::max(vmax - v1, 1e-300);
        opt.rel_tol = 1e-12;
        opt.abs_tol = 1e-15 * (vmax - v1);
        opt.max_refine = 8;
        const double smooth = vmax > v1 ? integrate(fv, {v1, vmax}, opt, "abel_smooth").value : 0.0;
        return pref * 2.0 * (v1 + smooth);
    };
    return g;
}

std::vector<double> fourier_of_abel(const AbelProfile& g, const std::vector<double>& lambdas, const QuadOptions& opt) {
    const Eigen::Index m = static_cast<Eigen::Index>(lambdas.size());
    Eigen::ArrayXd lam(m);
    for (Eigen::Index j = 0; j < m; ++j) lam[j] = lambdas[j];
    const double T = g.support;
    if (!(T > 0)) return std::vector<double>(lambdas.size(), 0.0);
    const double delta = std::min(0.5, 0.5 * T);
    const double split = T - delta;
    std::vector<double> cuts{0.0, split}, xcuts{0.0, std::sqrt(delta)};
    for (double b : g.breakpoints) {
        if (b > 0 && b < split) cuts.push_back(b);
        else if (b >= split && b < T) xcuts.push_back(std::sqrt(T - b));
    }
    std::sort(cuts.begin(), cuts.end());
    std::sort(xcuts.begin(), xcuts.end());
    auto body = [&](double u) -> Eigen::ArrayXd { return (2.0 * g(u)) * (lam * u).cos(); };
    // u = T - x^2 absorbs the square-root edge of the profile
    auto edge = [&](double x) -> Eigen::ArrayXd {
        const double u = T - x * x;
        return (4.0 * x * g(u)) * (lam * u).cos();
    };
    const auto a = integrate_array(body, m, cuts, opt, "fourier_of_abel");
    const auto b = integrate_array(edge, m, xcuts, opt, "fourier_of_abel");
    std::vector<double> out(lambdas.size());
    for (Eigen::Index j = 0; j < m; ++j) out[j] = a.value[j] + b.value[j];
    return out;
}

double fourier_of_abel(const AbelProfile& g, double lambda, const QuadOptions& opt) {
    return fourier_of_abel(g, std::vector<double>{lambda}, opt)[0];
}

namespace {

int boundary_nodes_for(double r, int floor_count) {
    return std::max(floor_count, 32 + static_cast<int>(std::ceil(36.0 / (1.0 - r))));
}

}  // namespace

std::function<cplx(double, const BoundaryPoint&)> helgason_forward(std::function<double(const DiscPoint&)> u,
                                                                   double support_radius, const HelgasonOptions& opt) {
    if (std::tanh(0.5 * support_radius) > 0.95 + 1e-12)
        throw DomainError("helgason_forward: support must lie inside |z| <= 0.95");
    return [u = std::move(u), support_radius, opt](double lambda, const BoundaryPoint& b) -> cplx {
        const cplx expo(0.5, -lambda);
        auto radial = [&](double rho) -> cplx {
            const double r = std::tanh(0.5 * rho);
            const int n = boundary_nodes_for(r, opt.angular_nodes);
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const DiscPoint z(std::polar(r, two_pi * k / n));
                const double val = u(z);
                if (val != 0.0) acc += val * std::exp(expo * busemann(z, b));
            }
            return acc * (two_pi / n) * std::sinh(rho);
        };
        return gl_composite(radial, panel_edges({0.0, support_radius}, opt.max_panel), opt.radial_order);
    };
}

std::function<double(const DiscPoint&, const DiscPoint&)> kernel_from_symbol(const Symbol& a,
                                                                           const PlancherelWeight& weight,
                                                                           const KernelOptions& opt) {
    if (!std::isfinite(a.lambda_support.hi)) throw DomainError("kernel_from_symbol: symbol needs compact lambda support");
    return [a, weight, opt](const DiscPoint& z, const DiscPoint& w) -> double {
        const double rmax = std::max(std::abs(z.z()), std::abs(w.z()));
        const int nb = boundary_nodes_for(rmax, opt.boundary_nodes);
        std::vector<BoundaryPoint> bs(nb);
        std::vector<double> bz(nb), bw(nb);
        for (int k = 0; k < nb; ++k) {
            bs[k] = BoundaryPoint(two_pi * k / nb);
            bz[k] = busemann(z, bs[k]);
            bw[k] = busemann(w, bs[k]);
        }
        auto over_lambda = [&](double lambda) -> double {
            cplx acc = 0.0;
            for (int k = 0; k < nb; ++k)
                acc += a.eval(z, lambda, bs[k]) * std::exp(cplx(0.5, lambda) * bz[k] + cplx(0.5, -lambda) * bw[k]);
            return (acc / static_cast<double>(nb)).real() * weight(lambda);
        };
        const auto edges = panel_edges({a.lambda_support.lo, a.lambda_support.hi}, 0.25);
        return gl_composite(over_lambda, edges, opt.lambda_order);
    };
}

double hs_norm_disc(const Symbol& a, const PlancherelWeight& weight, double z_support, int radial_order,
                    int angular_nodes, int lambda_order) {
    if (!std::isfinite(a.lambda_support.hi)) throw DomainError("hs_norm_disc: symbol needs compact lambda support");
    const auto lam_edges = panel_edges({a.lambda_support.lo, a.lambda_support.hi}, 0.25);
    auto radial = [&](double rho) -> double {
        const double r = std::tanh(0.5 * rho);
        const int nb = boundary_nodes_for(r, 32);
        double acc_alpha = 0.0;
        for (int k = 0; k < angular_nodes; ++k) {
            const DiscPoint z(std::polar(r, two_pi * (k + 0.5) / angular_nodes));
            auto over_lambda = [&](double lambda) -> double {
                double acc = 0.0;
                for (int j = 0; j < nb; ++j) {
                    const BoundaryPoint b(two_pi * j / nb);
                    acc += std::norm(a.eval(z, lambda, b)) * poisson_weight(z, b);
                }
                return acc * (two_pi / nb) * weight(lambda);
            };
            acc_alpha += gl_composite(over_lambda, lam_edges, lambda_order);
        }
        return acc_alpha * (two_pi / angular_nodes) * std::sinh(rho);
    };
    return weight.hs_constant() * gl_composite(radial, panel_edges({0.0, z_support}, 0.5), radial_order);
}

SpectralMultiplier bump_multiplier(double lo, double hi) {
    if (!(hi > lo)) throw DomainError("bump_multiplier: empty support");
    SpectralMultiplier m;
    m.support = {lo, hi};
    m.eval = [lo, hi](double lambda) {
        const double x = (2.0 * lambda - lo - hi) / (hi - lo);
        const double q = 1.0 - x * x;
        return q <= 0 ? 0.0 : std::exp(1.0 - 1.0 / q);
    };
    return m;
}

RadialKernel truncate(const RadialKernel& k, double cut) {
    RadialKernel out = k;
    out.support = std::min(k.support, cut);
    out.breakpoints.clear();
    for (double b : k.breakpoints)
        if (b < out.support) out.breakpoints.push_back(b);
    return out;
}

}  // namespace hqe
