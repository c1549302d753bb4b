#include "hqe/propagators.hpp"

#include <algorithm>
#include <cmath>

namespace hqe {

namespace {

double cosh_diff(double a, double b) { return 2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (a - b)); }

}  // namespace

double default_eta(double x) {
    if (x <= -1.0) return 1.0;
    if (x >= 0.0) return 0.0;
    const double s = x + 1.0;
    return 1.0 - s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

RadialKernel sharp_ball_kernel(double t) {
    if (!(t > 0)) throw DomainError("sharp_ball_kernel: t must be positive");
    const double level = 1.0 / std::sqrt(std::cosh(t));
    RadialKernel k;
    k.eval = [level](double) { return level; };
    k.support = t;
    k.smoothness = "discontinuous at t";
    return k;
}

RadialKernel smooth_ball_kernel(double t, double sigma, const std::function<double(double)>& eta) {
    if (!(t > 0) || !(sigma > 0)) throw DomainError("smooth_ball_kernel: t and sigma must be positive");
    const double level = 1.0 / std::sqrt(std::cosh(t));
    RadialKernel k;
    k.eval = [level, t, sigma, eta](double r) { return level * eta((r - t) / sigma); };
    k.support = t;
    if (t > sigma) k.breakpoints = {t - sigma};
    k.smoothness = "C2";
    return k;
}

RadialKernel Propagator::kernel() const {
    return kind == PropagatorKind::sharp ? sharp_ball_kernel(cutoff.t)
                                         : smooth_ball_kernel(cutoff.t, cutoff.sigma, cutoff.eta);
}

std::vector<double> h_sharp(double t, const std::vector<double>& lambdas, const QuadOptions& opt) {
    return fourier_of_abel(abel_sharp(t), lambdas, opt);
}

std::vector<double> h_smooth(double t, double sigma, const std::vector<double>& lambdas,
                             const std::function<double(double)>& eta, const QuadOptions& opt) {
    return fourier_of_abel(abel_smooth(t, sigma, eta), lambdas, opt);
}

double h_sharp(double t, double lambda) { return h_sharp(t, std::vector<double>{lambda})[0]; }

double h_smooth(double t, double sigma, double lambda, const std::function<double(double)>& eta) {
    return h_smooth(t, sigma, std::vector<double>{lambda}, eta)[0];
}

double abel_inner_integral(double lambda, double r) {
    if (!(r > 0)) throw DomainError("abel_inner_integral: r must be positive");
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-16;
    const double split = std::max(0.0, r - 1.0);
    double far = 0.0;
    if (split > 0) {
        auto f = [&](double u) { return std::cos(lambda * u) / std::sqrt(cosh_diff(r, u)); };
        far = integrate(f, {0.0, split}, opt, "abel_inner").value;
    }
    // u = r - x^2 on [split, r]; cosh r - cosh(r - x^2) = 2 sinh(r - x^2/2) sinh(x^2/2)
    auto g = [&](double x) {
        const double x2 = x * x;
        return std::cos(lambda * (r - x2)) * 2.0 * x / std::sqrt(2.0 * std::sinh(r - 0.5 * x2) * std::sinh(0.5 * x2));
    };
    opt.max_panel = 0.25;
    const double near = integrate(g, {0.0, std::sqrt(r - split)}, opt, "abel_inner").value;
    return far + near;
}

double abel_inner_bound(double lambda, double r) { return std::exp(0.5 * r) * std::abs(abel_inner_integral(lambda, r)); }

AbelInnerConstant abel_inner_constant(Interval lambdas, Interval radii, double lambda_step, double r_step) {
    AbelInnerConstant best;
    const int nl = std::max(1, static_cast<int>(std::ceil(lambdas.width() / lambda_step)));
    const int nr = std::max(1, static_cast<int>(std::ceil(radii.width() / r_step)));
    for (int i = 0; i <= nl; ++i) {
        const double lam = lambdas.lo + lambdas.width() * i / nl;
        for (int j = 0; j <= nr; ++j) {
            const double r = radii.lo + radii.width() * j / nr;
            const double v = abel_inner_bound(lam, r);
            if (v > best.value) best = {v, r, lam};
        }
    }
    return best;
}

DeltaH delta_h(double t, double sigma, double lambda, const std::function<double(double)>& eta) {
    if (!(t > 1.0 + sigma)) throw DomainError("delta_h: requires t > 1 + sigma");
    auto f = [&](double r) { return (eta((r - t) / sigma) - 1.0) * std::sinh(r) * abel_inner_integral(lambda, r); };
    QuadOptions opt;
    opt.order = 24;
    opt.max_panel = sigma;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-15;
    const double integral = integrate(f, {t - sigma, t}, opt, "delta_h").value;
    DeltaH out;
    out.formula = 2.0 * std::sqrt(2.0 / std::cosh(t)) * integral;
    out.subtraction = h_smooth(t, sigma, lambda, eta) - h_sharp(t, lambda);
    return out;
}

AverageMultiplier avg_multiplier_H(const std::vector<double>& T_list, double sigma, const std::vector<double>& lambdas,
                                   PropagatorKind kind, int n_t, const std::function<double(double)>& eta) {
    if (T_list.empty()) throw DomainError("avg_multiplier_H: no horizons");
    for (double T : T_list)
        if (!(T > 0)) throw DomainError("avg_multiplier_H: T must be positive");
    const double T_max = *std::max_element(T_list.begin(), T_list.end());
    if (n_t <= 0) n_t = static_cast<int>(std::ceil(T_max));
    std::vector<double> cuts{0.0};
    for (double T : T_list) cuts.push_back(T);
    const auto edges = panel_edges(cuts, T_max / n_t);
    const GaussRule& rule = gauss_legendre(8);
    const std::size_t m = lambdas.size();

    AverageMultiplier out;
    out.T = T_list;
    out.cap.assign(m, 0.0);
    std::vector<double> running(m, 0.0);
    std::vector<std::pair<double, std::vector<double>>> partial{{0.0, running}};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1], half = 0.5 * (b - a);
        for (int i = 0; i < 8; ++i) {
            const double t = a + half * (1.0 + rule.nodes[i]);
            const auto h = kind == PropagatorKind::sharp ? h_sharp(t, lambdas) : h_smooth(t, sigma, lambdas, eta);
            for (std::size_t j = 0; j < m; ++j) {
                running[j] += rule.weights[i] * half * h[j] * h[j];
                out.cap[j] = std::max(out.cap[j], h[j] * h[j]);
            }
        }
        partial.emplace_back(b, running);
    }
    for (double T : T_list) {
        auto it = std::min_element(partial.begin(), partial.end(), [T](const auto& x, const auto& y) {
            return std::abs(x.first - T) < std::abs(y.first - T);
        });
        std::vector<double> H(m);
        for (std::size_t j = 0; j < m; ++j) H[j] = it->second[j] / T;
        out.H.push_back(std::move(H));
    }
    return out;
}

double avg_multiplier_H(double T, double sigma, double lambda, int n_t) {
    return avg_multiplier_H(std::vector<double>{T}, sigma, std::vector<double>{lambda}, PropagatorKind::smooth, n_t).H[0][0];
}

std::vector<double> lambda_grid(Interval I, double spacing) {
    if (!(I.hi >= I.lo)) throw DomainError("lambda_grid: inverted interval");
    const int n = std::max(1, static_cast<int>(std::ceil(I.width() / spacing)));
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = I.lo + I.width() * i / n;
    return out;
}

PositivityCertificate positivity_certificate(Interval I, double sigma, const std::vector<double>& T_list,
                                     const std::vector<double>& grid, bool with_sharp) {
    if (grid.empty()) throw DomainError("positivity_certificate: empty lambda grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    for (double l : sorted)
        if (l < I.lo - 1e-12 || l > I.hi + 1e-12) throw DomainError("positivity_certificate: lambda grid leaves I");
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] > 0.02 + 1e-12) throw DomainError("positivity_certificate: grid spacing above 0.02");
    if (T_list.empty()) throw DomainError("positivity_certificate: no horizons");

    PositivityCertificate cert;
    cert.I = I;
    cert.sigma = sigma;
    cert.T_list = T_list;
    auto floors = [&](PropagatorKind kind, std::vector<double>& c_min, std::vector<double>* argmin) {
        const auto avg = avg_multiplier_H(T_list, sigma, sorted, kind);
        for (const auto& row : avg.H) {
            const auto it = std::min_element(row.begin(), row.end());
            c_min.push_back(*it);
            if (argmin) argmin->push_back(sorted[it - row.begin()]);
        }
    };
    floors(PropagatorKind::smooth, cert.c_min, &cert.argmin);
    if (with_sharp) floors(PropagatorKind::sharp, cert.c_min_sharp, nullptr);

    cert.positive = std::all_of(cert.c_min.begin(), cert.c_min.end(), [](double c) { return c > 0; });
    // upper half of the horizons, by value
    std::vector<std::pair<double, double>> byT;
    for (std::size_t i = 0; i < T_list.size(); ++i) byT.emplace_back(T_list[i], cert.c_min[i]);
    std::sort(byT.begin(), byT.end());
    const std::size_t start = byT.size() / 2;
    double lo = infinity, hi = -infinity;
    for (std::size_t i = start; i < byT.size(); ++i) {
        lo = std::min(lo, byT[i].second);
        hi = std::max(hi, byT[i].second);
    }
    cert.spread_upper_half = hi > 0 ? (hi - lo) / hi : infinity;
    cert.stable = cert.spread_upper_half < 0.2;
    cert.pass = cert.positive && cert.stable;
    return cert;
}

double beta_norm_check(double t, double p) {
    if (!(p > 1.0 && p < 2.0)) throw DomainError("beta_norm_check: p must lie in (1, 2)");
    if (!(t > 0)) throw DomainError("beta_norm_check: t must be positive");
    const double delta = std::min(0.5, 0.5 * t);
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    auto body = [&](double s) { return std::exp(0.5 * (p - 1.0) * s) * 2.0 * std::sqrt(cosh_diff(t, s)); };
    auto edge = [&](double x) {
        const double s = t - x * x;
        return 2.0 * x * std::exp(0.5 * (p - 1.0) * s) * 2.0 * std::sqrt(cosh_diff(t, s));
    };
    const double a = integrate(body, {0.0, t - delta}, opt, "beta_norm_check").value;
    const double b = integrate(edge, {0.0, std::sqrt(delta)}, opt, "beta_norm_check").value;
    return std::exp(-0.5 * p * t) * (a + b);
}

}  // namespace hqe
