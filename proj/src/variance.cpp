#include "hqe/variance.hpp"

#include <algorithm>
#include <cmath>

#include "hqe/fem.hpp"
#include "hqe/propagators.hpp"

namespace hqe {

SpectralWindow SpectralWindow::from_nu(Interval J, double margin) {
    if (!(J.lo > 0.25 + 1e-9) || !(J.hi >= J.lo)) throw DomainError("SpectralWindow: J must lie in (1/4, inf)");
    if (!(margin >= 0)) throw DomainError("SpectralWindow: margin must be nonnegative");
    SpectralWindow w;
    w.J = J;
    w.I = {std::sqrt(J.lo - 0.25), std::sqrt(J.hi - 0.25)};
    const double pad = margin * w.I.width();
    w.I_prime = {std::max(0.0, w.I.lo - pad), w.I.hi + pad};
    return w;
}

Toy1dResult toy1d_variance(double L, Interval window, const std::function<double(double)>& observable,
                           double sup_bound, const std::vector<double>& breakpoints, double tol) {
    if (!(L > 0) || !(window.hi >= window.lo) || !(window.lo >= 0)) throw DomainError("toy1d_variance: bad L or window");
    Toy1dResult out;
    const int k_hi = static_cast<int>(std::floor(L * std::sqrt(window.hi) / pi)) + 1;
    for (int k = std::max(1, static_cast<int>(std::floor(L * std::sqrt(window.lo) / pi)) - 1); k <= k_hi; ++k) {
        const double nu = (k * pi / L) * (k * pi / L);
        if (window.contains(nu)) out.modes.push_back(k);
    }
    if (out.modes.empty()) throw EmptyWindow("toy1d_variance: no mode in the window");
    std::vector<double> cuts{0.0, L};
    for (double b : breakpoints)
        if (b > 0 && b < L) cuts.push_back(b);
    // <psi_k, a psi_k> - mean(a) = -(1/L) int a cos(2 pi k x / L)
    for (int k : out.modes) {
        QuadOptions opt;
        opt.rel_tol = tol;
        opt.abs_tol = tol;
        opt.max_panel = std::min(L, 0.5 * L / k);
        opt.max_refine = 8;
        const double freq = two_pi * k / L;
        const auto q = integrate([&](double x) { return observable(x) * std::cos(freq * x); }, cuts, opt, "toy1d");
        const double c = q.value / L;
        out.terms.push_back(c * c);
        out.quadrature_error = std::max(out.quadrature_error, q.error / L);
    }
    out.count = static_cast<int>(out.modes.size());
    for (double t : out.terms) out.variance += t;
    out.variance /= out.count;
    out.bound = sup_bound * sup_bound / out.count;
    return out;
}

VarianceReport quantum_variance(const Observable& A, const EigenData& data, const SpectralWindow& window,
                                const PlancherelWeight& weight, std::uint64_t seed, const SampleRegion& region,
                                double surface_volume, std::size_t n_mc) {
    if (A.kind != ObservableKind::multiplication)
        throw DomainError("quantum_variance: only multiplication observables act on sampled eigenvectors");
    VarianceReport rep;
    rep.window = window;
    rep.surface_id = data.surface_id;
    rep.weight = weight.name();
    rep.seed = seed;
    rep.volume = surface_volume;
    Eigen::VectorXd sampled(data.n_mesh());
    for (Eigen::Index i = 0; i < data.n_mesh(); ++i) sampled[i] = A.multiplier(DiscPoint(cplx(data.x[i], data.y[i])));
    const Eigen::VectorXd weighted = data.weight.cwiseProduct(sampled);
    for (Eigen::Index j = 0; j < data.n_modes(); ++j) {
        const double nu = data.eigenvalues[j];
        if (!window.J.contains(nu)) continue;
        const auto psi = data.eigenvectors.col(j);
        const double me = weighted.dot(psi.cwiseProduct(psi));
        const Estimate lim = limit_term(A, std::sqrt(nu - 0.25), region, n_mc, seed + static_cast<std::uint64_t>(j));
        rep.nu.push_back(nu);
        rep.matrix_elements.push_back(me);
        rep.limit_terms.push_back(lim.value);
        rep.terms.push_back((me - lim.value) * (me - lim.value));
        rep.limit_error = std::max(rep.limit_error, lim.std_error);
    }
    rep.count = static_cast<int>(rep.terms.size());
    if (rep.count == 0) throw EmptyWindow("quantum_variance: no eigenvalue in the window");
    double sum = 0.0;
    for (double t : rep.terms) sum += t;
    rep.variance = sum / rep.count;
    if (rep.count > 1) {
        double ss = 0.0;
        for (double t : rep.terms) ss += (t - rep.variance) * (t - rep.variance);
        rep.std_error = std::sqrt(ss / (rep.count - 1) / rep.count);
    } else {
        rep.std_error = rep.variance;
    }
    rep.sum_over_volume = sum / (two_pi * surface_volume);
    return rep;
}

double weyl_predicted(Interval J) {
    const double lo = std::sqrt(std::max(J.lo - 0.25, 0.0));
    const double hi = std::sqrt(std::max(J.hi - 0.25, 0.0));
    if (!(hi > lo)) return 0.0;
    const auto q = integrate([](double s) { return s * std::tanh(pi * s); }, {lo, hi}, {}, "weyl_predicted");
    return q.value / two_pi;
}

WeylReport weyl_ratio(const EigenData& data, Interval J, double surface_volume) {
    if (data.n_modes() == 0 || !(data.eigenvalues.maxCoeff() > 1.2 * J.hi))
        throw WindowNotResolved("weyl_ratio: eigendata stops before 1.2 sup J");
    WeylReport rep;
    for (Eigen::Index j = 0; j < data.n_modes(); ++j)
        if (J.contains(data.eigenvalues[j])) ++rep.count;
    rep.volume = surface_volume;
    rep.measured = rep.count / surface_volume;
    rep.predicted = weyl_predicted(J);
    return rep;
}

PipelineBounds variance_pipeline_bounds(const PipelineInputs& in, double T, double r, double s) {
    if (!(T > 0) || !(r > 0) || !(s >= 0)) throw DomainError("variance_pipeline_bounds: need T, r > 0 and s >= 0");
    if (!(in.nevo_n > 1)) throw DomainError("variance_pipeline_bounds: the Nevo exponent must exceed 1");
    if (!(in.systole > 0)) throw DomainError("variance_pipeline_bounds: systole must be positive");
    PipelineBounds b;
    b.T = T;
    b.r = r;
    b.s = s;
    b.S_T = 2.0 * T + in.locality_S;
    const double K2 = in.kernel_sup * in.kernel_sup;
    const double ratio2 = (b.S_T / r) * (b.S_T / r);
    b.C_rho = pi * in.kernel_rho_l2sq;
    b.C_rho_prime = b.C_rho + in.kernel_rho_l2sq;
    b.time_term = in.theta_norm / ((1.0 - 1.0 / in.nevo_n) * T);
    b.geometric_term =
        2.0 * (1.0 + ratio2) * b.C_rho_prime * K2 * std::exp(2.0 * (r + b.S_T)) / in.systole * in.bs_fraction;
    b.propagation_term = 2.0 * ratio2 * std::exp(2.0 * b.S_T) * K2 * in.kernel_rho_l2sq;
    b.truncation_term = 2.0 * two_pi * (std::cosh(b.S_T) - 1.0) * K2 / ((1.0 + r) * (1.0 + r));
    if (s > 0)
        b.mean_term = std::exp(2.0 * (s + 2.0 * T)) / in.systole * in.bs_fraction_mean * in.mean_kernel_sup *
                      in.mean_kernel_sup;
    b.total = b.time_term + b.geometric_term + b.propagation_term + b.truncation_term + b.mean_term;
    const std::pair<const char*, double> terms[] = {{"time", b.time_term},
                                                    {"geometric", b.geometric_term},
                                                    {"propagation", b.propagation_term},
                                                    {"truncation", b.truncation_term},
                                                    {"mean", b.mean_term}};
    double best = -1.0;
    for (const auto& [name, value] : terms)
        if (value > best) {
            best = value;
            b.dominant = name;
        }
    return b;
}

PipelineInputs measure_pipeline_inputs(const Observable& A, const CoverSurface& surface, double T, double r, double s,
                                       const SpectralWindow& window, const PlancherelWeight& weight,
                                       const PipelineConfig& cfg) {
    if (!(T > 0) || !(r > 0)) throw DomainError("measure_pipeline_inputs: need T, r > 0");
    PipelineInputs in;
    in.nevo_n = cfg.nevo_n;
    in.locality_S = A.locality.S;
    const SampleRegion region = SampleRegion::of_group(surface.base);
    in.theta_norm =
        theta_second_derivative_norm(symbol_of(A), lambda_grid(window.I_prime, 0.1), region, cfg.theta_samples, cfg.seed)
            .value;
    for (int i = 1; i <= cfg.kernel_times; ++i) {
        const double t = T * i / cfg.kernel_times;
        in.kernel_sup = std::max(in.kernel_sup, sandwich_sup_bound(A, t, std::min(cfg.sigma, t)).value);
    }
    in.systole = systole(surface.base);
    const double S_T = 2.0 * T + A.locality.S;
    in.bs_fraction = bs_statistic(surface, r + S_T, cfg.bs_samples, cfg.seed).value;

    const SpectralMultiplier rho = bump_multiplier(window.I_prime.lo, window.I_prime.hi);
    QuadOptions q;
    q.max_panel = 0.05;
    in.kernel_rho_l2sq =
        weight.hs_constant() *
        integrate([&](double l) { return rho(l) * rho(l) * weight(l); }, {window.I_prime.lo, window.I_prime.hi}, q,
                  "rho_l2")
            .value;

    const double mean = A.multiplier_mean.value_or(0.0);
    if (s > 0 && mean != 0.0) {
        in.bs_fraction_mean = bs_statistic(surface, s + 2.0 * T, cfg.bs_samples, cfg.seed + 1).value;
        const RadialKernel k = inverse_selberg(rho, weight);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) sup = std::max(sup, std::abs(k(s * i / 200.0)));
        in.mean_kernel_sup = std::abs(mean) * weight.selberg_constant() * sup;
    }
    return in;
}

int suggested_mode_count(double surface_volume, Interval J) {
    return static_cast<int>(std::ceil(1.5 * surface_volume * 1.2 * J.hi / (4.0 * pi))) + 10;
}

TowerReport run_tower(const TowerOptions& opt) {
    if (opt.degrees.empty()) throw DomainError("run_tower: no degrees");
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    const Observable A = orbit_bump_observable(bolza, opt.bump_radius);
    const SampleRegion region = SampleRegion::of_group(bolza);
    const SpectralWindow window = SpectralWindow::from_nu(opt.J);
    const PlancherelWeight weight;
    TowerReport rep;
    for (int d : opt.degrees) {
        const CoverSurface cover = d == 1 ? CoverSurface::trivial_cover(bolza) : random_cover(bolza, d, opt.seed);
        const double vol = cover.volume();
        TowerLevel lvl;
        lvl.degree = d;
        lvl.surface_id = cover.id();
        lvl.n_modes = suggested_mode_count(vol, opt.J);
        const EigenData fine = fem_eigensolve(cover, opt.h, lvl.n_modes);
        const EigenData coarse = fem_eigensolve(cover, 2.0 * opt.h, lvl.n_modes);
        lvl.nu0 = fine.eigenvalues[0];
        lvl.fine = quantum_variance(A, fine, window, weight, opt.seed, region, vol);
        lvl.coarse = quantum_variance(A, coarse, window, weight, opt.seed, region, vol);
        lvl.error_bar = lvl.fine.std_error + std::abs(lvl.fine.variance - lvl.coarse.variance);
        lvl.weyl = weyl_ratio(fine, opt.J, vol);
        rep.levels.push_back(std::move(lvl));
    }
    rep.nonincreasing = true;
    for (std::size_t i = 0; i + 1 < rep.levels.size(); ++i) {
        const auto& a = rep.levels[i];
        const auto& b = rep.levels[i + 1];
        if (b.fine.variance > a.fine.variance + a.error_bar + b.error_bar) rep.nonincreasing = false;
    }
    rep.weyl_ratio = rep.levels.back().weyl.ratio();
    rep.weyl_pass = rep.weyl_ratio >= 0.5 && rep.weyl_ratio <= 2.0;
    rep.pass = rep.nonincreasing && rep.weyl_pass;
    return rep;
}

}  // namespace hqe
