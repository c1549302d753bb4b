#pragma once

#include <vector>

#include "hqe/core.hpp"

namespace hqe {

// Principal-branch log Gamma for Re z > -10 via upward shift and Stirling.
cplx log_gamma(cplx z);

struct HarishChandra {
    cplx c;
    double inv_abs2;  // |c(lambda)|^{-2}
};

// c(lambda) = Gamma(i lambda) / (sqrt(pi) Gamma(1/2 + i lambda)); rejects lambda <= 1e-8.
HarishChandra harish_chandra_c(double lambda);

// (1/pi) int_0^pi (cosh t - sinh t cos th)^{-1/2 - i lambda} dth by a
// double-exponential rule; t <= 50.
double spherical_phi(double lambda, double t);

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;
};

// 2 Re[c(lambda) e^{(-1/2 + i lambda) t} sum_l Gamma_l e^{-2 l t}], Gamma_0 = 1.
SeriesValue spherical_phi_series(double lambda, double t, int l_max = 200, double t_min = 0.5);

// Coefficients Gamma_0..Gamma_{count-1} of the expansion above.
std::vector<cplx> series_coefficients(double lambda, int count);

// Gauss hypergeometric form 2F1(1/2+il, 1/2-il; 1; -sinh^2(t/2)); t < 1.7.
double spherical_phi_hypergeometric(double lambda, double t);

// Dispatcher used inside quadratures: hypergeometric for t < 1, the series
// for lambda >= 0.05, the integral otherwise.
double spherical_phi_fast(double lambda, double t);

// Precomputed series data for a fixed set of frequencies; evaluates
// sum_j w_j phi_{lambda_j}(t) cheaply at many t.
class SphericalTable {
public:
    SphericalTable(std::vector<double> lambdas, std::vector<double> weights);
    double weighted_sum(double t) const;
    // phi_{lambda_j}(t) for every stored frequency
    void evaluate(double t, double* out) const;
    std::size_t size() const { return lambdas_.size(); }

private:
    static constexpr int terms_ = 48;
    std::vector<double> lambdas_;
    std::vector<double> weights_;
    std::vector<cplx> c_;
    std::vector<cplx> gamma_;  // terms_ per frequency, row-major
};

}  // namespace hqe
