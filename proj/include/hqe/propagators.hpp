#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hqe/transforms.hpp"

namespace hqe {

// Quintic smootherstep cutoff: 1 on (-inf, -1], 0 on [0, inf), C^2 in between.
double default_eta(double x);

struct CutoffSpec {
    std::function<double(double)> eta = default_eta;
    double sigma = 0.1;
    double t = 1.0;

    // chi_{t,sigma}(r) = eta((r - t)/sigma) on [0, t], 0 beyond
    double chi(double r) const { return r > t ? 0.0 : eta((r - t) / sigma); }
};

enum class PropagatorKind { smooth, sharp };

struct Propagator {
    PropagatorKind kind = PropagatorKind::smooth;
    CutoffSpec cutoff;

    RadialKernel kernel() const;
    double t() const { return cutoff.t; }
};

RadialKernel sharp_ball_kernel(double t);
RadialKernel smooth_ball_kernel(double t, double sigma, const std::function<double(double)>& eta = default_eta);

// Selberg transforms via the Abel route.  The Abel route carries the factor
// 2 pi relative to int k phi sinh dt.
inline constexpr double abel_route_normalization = two_pi;

double h_sharp(double t, double lambda);
double h_smooth(double t, double sigma, double lambda, const std::function<double(double)>& eta = default_eta);
std::vector<double> h_sharp(double t, const std::vector<double>& lambdas, const QuadOptions& opt = {});
std::vector<double> h_smooth(double t, double sigma, const std::vector<double>& lambdas,
                             const std::function<double(double)>& eta = default_eta, const QuadOptions& opt = {});

struct DeltaH {
    double formula = 0.0;      // explicit double integral
    double subtraction = 0.0;  // h_smooth - h_sharp
};
DeltaH delta_h(double t, double sigma, double lambda, const std::function<double(double)>& eta = default_eta);

// int_0^r cos(lambda u) / sqrt(cosh r - cosh u) du
double abel_inner_integral(double lambda, double r);
// e^{r/2} |abel_inner_integral(lambda, r)|
double abel_inner_bound(double lambda, double r);

struct AbelInnerConstant {
    double value = 0.0;
    double r_at = 0.0;
    double lambda_at = 0.0;
};
// Sup of abel_inner_bound over a grid in r and lambda.
AbelInnerConstant abel_inner_constant(Interval lambdas, Interval radii, double lambda_step = 0.05, double r_step = 0.01);

struct AverageMultiplier {
    std::vector<double> T;                 // requested horizons
    std::vector<std::vector<double>> H;    // H[i][j] = H_{T_i}(lambda_j)
    std::vector<double> cap;               // sup over the t grid of h_t(lambda)^2, per lambda
};

// (1/T) int_0^T h_t(lambda)^2 dt by 8-point Gauss-Legendre on n_t panels
// over [0, max T]; n_t = 0 picks one panel per unit length.
AverageMultiplier avg_multiplier_H(const std::vector<double>& T_list, double sigma, const std::vector<double>& lambdas,
                                   PropagatorKind kind = PropagatorKind::smooth, int n_t = 0,
                                   const std::function<double(double)>& eta = default_eta);
double avg_multiplier_H(double T, double sigma, double lambda, int n_t = 0);

struct PositivityCertificate {
    Interval I;
    double sigma = 0.0;
    std::vector<double> T_list;
    std::vector<double> c_min;
    std::vector<double> argmin;
    std::vector<double> c_min_sharp;  // same floor for the sharp propagator
    double spread_upper_half = 0.0;   // (max - min)/max of c_min over the upper half of T_list
    bool positive = false;
    bool stable = false;
    bool pass = false;
};

PositivityCertificate positivity_certificate(Interval I, double sigma, const std::vector<double>& T_list,
                                     const std::vector<double>& lambda_grid, bool with_sharp = true);

// Uniform lambda grid over I with spacing at most `spacing`.
std::vector<double> lambda_grid(Interval I, double spacing = 0.02);

// e^{-pt/2} int_0^t e^{(p-1)s/2} 2 sqrt(cosh t - cosh s) ds
double beta_norm_check(double t, double p = 1.5);

}  // namespace hqe
