#include "hqe/special.hpp"

#include <cmath>

#include "hqe/quadrature.hpp"

namespace hqe {

cplx log_gamma(cplx z) {
    if (z.real() <= -10.0) throw DomainError("log_gamma: argument too far left");
    cplx shift = 0.0;
    while (std::abs(z) < 15.0 || z.real() < 5.0) {
        shift += std::log(z);
        z += 1.0;
    }
    // Stirling with Bernoulli terms B_{2k} / (2k (2k-1) z^{2k-1}), k = 1..8
    static const double coef[] = {1.0 / 12.0,       -1.0 / 360.0,      1.0 / 1260.0,        -1.0 / 1680.0,
                                  1.0 / 1188.0,     -691.0 / 360360.0, 1.0 / 156.0,         -3617.0 / 122400.0};
    const cplx inv = 1.0 / z, inv2 = inv * inv;
    cplx series = 0.0, power = inv;
    for (double c : coef) {
        series += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi) + series - shift;
}

HarishChandra harish_chandra_c(double lambda) {
    if (!(lambda > 1e-8)) throw DomainError("harish_chandra_c: lambda must exceed 1e-8");
    const cplx c = std::exp(log_gamma(cplx(0.0, lambda)) - log_gamma(cplx(0.5, lambda))) / std::sqrt(pi);
    return {c, 1.0 / std::norm(c)};
}

double spherical_phi(double lambda, double t) {
    if (t < 0 || t > 50) throw DomainError("spherical_phi: t must lie in [0, 50]");
    if (t == 0) return 1.0;
    const double em = std::exp(-t), sh = std::sinh(t);
    const cplx expo(-0.5, -lambda);
    // cosh t - sinh t cos th = e^{-t} + 2 sinh t sin^2(th/2), free of cancellation
    auto integrand = [&](double, double from_zero, double from_pi) -> cplx {
        const double sn = from_zero < from_pi ? std::sin(0.5 * from_zero) : std::cos(0.5 * from_pi);
        const double base = em + 2.0 * sh * sn * sn;
        return std::exp(expo * std::log(base));
    };
    const auto res = de_integrate(integrand, 0.0, pi, 1e-13, 14, "spherical_phi");
    const cplx value = res.value / pi;
    if (res.error > 1e-9) throw QuadratureNotConverged("spherical_phi: node doubling moved the value by more than 1e-9");
    if (std::abs(value.imag()) > 1e-10)
        throw QuadratureNotConverged("spherical_phi: imaginary residue above 1e-10");
    return value.real();
}

std::vector<cplx> series_coefficients(double lambda, int count) {
    std::vector<cplx> gam(count);
    if (count == 0) return gam;
    gam[0] = 1.0;
    const cplx il(0.0, lambda);
    for (int l = 1; l < count; ++l) {
        const double m = 2.0 * l - 1.0;
        gam[l] = gam[l - 1] * (m * (m - 2.0 * il)) / (4.0 * l * (double(l) - il));
    }
    return gam;
}

SeriesValue spherical_phi_series(double lambda, double t, int l_max, double t_min) {
    if (t < t_min) throw DomainError("spherical_phi_series: t below the series range");
    if (l_max < 1) throw DomainError("spherical_phi_series: l_max must be positive");
    const HarishChandra hc = harish_chandra_c(lambda);
    const double q = std::exp(-2.0 * t);
    const cplx il(0.0, lambda);
    cplx gam = 1.0, sum = 1.0;
    double qpow = 1.0;
    int l = 1;
    for (; l <= l_max; ++l) {
        const double m = 2.0 * l - 1.0;
        gam *= (m * (m - 2.0 * il)) / (4.0 * l * (double(l) - il));
        qpow *= q;
        const cplx term = gam * qpow;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    const int used = std::min(l, l_max);
    // |Gamma_l| is nonincreasing in l, so the neglected terms are bounded by
    // a geometric series; the factor 10 is a safety margin.
    const double m = 2.0 * (used + 1) - 1.0;
    const double next = std::abs(gam) * (m * std::abs(m - 2.0 * il)) / (4.0 * (used + 1) * std::abs(double(used + 1) - il));
    const double envelope = 2.0 * std::abs(hc.c) * std::exp(-0.5 * t);
    const double tail = 10.0 * next * qpow * q / (1.0 - q) * envelope;
    if (tail > 1e-8) throw SeriesDiverged("spherical_phi_series: tail estimate above 1e-8 at l_max");
    const cplx lead = hc.c * std::exp(cplx(-0.5, lambda) * t);
    return {2.0 * (lead * sum).real(), tail, used + 1};
}

double spherical_phi_hypergeometric(double lambda, double t) {
    if (t < 0 || t >= 1.7) throw DomainError("spherical_phi_hypergeometric: t outside [0, 1.7)");
    const double sh = std::sinh(0.5 * t);
    const double z = -sh * sh;
    double term = 1.0, sum = 1.0;
    const double l2 = lambda * lambda;
    for (int n = 0; n < 2000; ++n) {
        const double a = n + 0.5;
        term *= (a * a + l2) / ((n + 1.0) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2) return sum;
    }
    throw SeriesDiverged("spherical_phi_hypergeometric: no convergence");
}

double spherical_phi_fast(double lambda, double t) {
    if (t < 1.0) return spherical_phi_hypergeometric(lambda, t);
    if (lambda >= 0.05) return spherical_phi_series(lambda, t).value;
    return spherical_phi(lambda, t);
}

SphericalTable::SphericalTable(std::vector<double> lambdas, std::vector<double> weights)
    : lambdas_(std::move(lambdas)), weights_(std::move(weights)) {
    c_.resize(lambdas_.size());
    gamma_.resize(lambdas_.size() * terms_);
    for (std::size_t j = 0; j < lambdas_.size(); ++j) {
        if (lambdas_[j] < 0.05) continue;
        c_[j] = harish_chandra_c(lambdas_[j]).c;
        const auto g = series_coefficients(lambdas_[j], terms_);
        std::copy(g.begin(), g.end(), gamma_.begin() + j * terms_);
    }
}

void SphericalTable::evaluate(double t, double* out) const {
    if (t < 1.0) {
        for (std::size_t j = 0; j < lambdas_.size(); ++j) out[j] = spherical_phi_hypergeometric(lambdas_[j], t);
        return;
    }
    const double q = std::exp(-2.0 * t);
    const double decay = std::exp(-0.5 * t);
    for (std::size_t j = 0; j < lambdas_.size(); ++j) {
        if (lambdas_[j] < 0.05) {
            out[j] = spherical_phi(lambdas_[j], t);
            continue;
        }
        const cplx* g = &gamma_[j * terms_];
        cplx sum = g[terms_ - 1];
        for (int l = terms_ - 2; l >= 0; --l) sum = sum * q + g[l];
        out[j] = 2.0 * (c_[j] * std::polar(decay, lambdas_[j] * t) * sum).real();
    }
}

double SphericalTable::weighted_sum(double t) const {
    double total = 0.0;
    if (t < 1.0) {
        for (std::size_t j = 0; j < lambdas_.size(); ++j)
            total += weights_[j] * spherical_phi_hypergeometric(lambdas_[j], t);
        return total;
    }
    const double q = std::exp(-2.0 * t);
    const double decay = std::exp(-0.5 * t);
    for (std::size_t j = 0; j < lambdas_.size(); ++j) {
        if (weights_[j] == 0.0) continue;
        if (lambdas_[j] < 0.05) {
            total += weights_[j] * spherical_phi(lambdas_[j], t);
            continue;
        }
        const cplx* g = &gamma_[j * terms_];
        // Horner in q
        cplx sum = g[terms_ - 1];
        for (int l = terms_ - 2; l >= 0; --l) sum = sum * q + g[l];
        const cplx lead = c_[j] * std::polar(decay, lambdas_[j] * t);
        total += weights_[j] * 2.0 * (lead * sum).real();
    }
    return total;
}

}  // namespace hqe
