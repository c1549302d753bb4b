#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hqe/core.hpp"
#include "hqe/geometry.hpp"
#include "hqe/quadrature.hpp"
#include "hqe/special.hpp"

namespace hqe {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Function of hyperbolic distance.  Evaluates to 0 beyond a finite support.
struct RadialKernel {
    std::function<double(double)> eval;
    double support = infinity;
    std::vector<double> breakpoints;  // interior points where smoothness drops
    std::string smoothness = "smooth";

    double operator()(double t) const { return t > support ? 0.0 : eval(t); }
};

// Function of the frequency lambda (nu = 1/4 + lambda^2), treated as even.
struct SpectralMultiplier {
    std::function<double(double)> eval;
    Interval support{0.0, infinity};

    double operator()(double lambda) const {
        const double l = std::abs(lambda);
        return support.contains(l) ? eval(l) : 0.0;
    }
};

// Even function of the horocyclic parameter u.
struct AbelProfile {
    std::function<double(double)> eval;  // called with u >= 0
    double support = 0.0;
    std::vector<double> breakpoints;

    double operator()(double u) const {
        const double a = std::abs(u);
        return a > support ? 0.0 : eval(a);
    }
};

enum class WeightVariant { tanh_2pi, harmonic_tanh_pi };

// Spectral density in the inversion formula.  The two variants differ by
// constants and by the tanh argument; selberg_constant is the factor in front
// of int k phi sinh dt that makes the pair an exact inverse, hs_constant the
// factor in front of the triple integral that reproduces the kernel L2 norm.
struct PlancherelWeight {
    WeightVariant variant = WeightVariant::harmonic_tanh_pi;

    double operator()(double lambda) const;
    double selberg_constant() const;
    double hs_constant() const;
    std::string name() const;
    static PlancherelWeight parse(const std::string& text);
};

// Complete symbol a(z, lambda, b) with its frequency support.
struct Symbol {
    std::function<cplx(const DiscPoint&, double, const BoundaryPoint&)> eval;
    Interval lambda_support{0.0, infinity};
    std::string derived_from;
};

// normalization * int_0^support k(t) phi_lambda(t) sinh t dt
double selberg_value(const RadialKernel& k, double lambda, double normalization = 1.0, const QuadOptions& opt = {});
std::vector<double> selberg_values(const RadialKernel& k, const std::vector<double>& lambdas,
                                   double normalization = 1.0, const QuadOptions& opt = {});
SpectralMultiplier selberg_transform(const RadialKernel& k, double normalization = 1.0);

struct InverseSelbergOptions {
    int order = 32;             // Gauss-Legendre points per frequency panel
    double panel_scale = 1.0;   // < 1 refines the frequency panels
    double truncation_rel = 1e-6;
    double max_support = 600.0;
};

// t -> int rho(lambda) phi_lambda(t) w(lambda) dlambda, truncated once the
// envelope |k| e^{t/2} carries less than truncation_rel of its mass per
// window of length 20.
RadialKernel inverse_selberg(const SpectralMultiplier& rho, const PlancherelWeight& weight,
                             const InverseSelbergOptions& opt = {});

// Abel transform g(u) = sqrt(2) int_{|u|}^T k(r) sinh r / sqrt(cosh r - cosh u) dr
// of a finitely supported kernel.
AbelProfile abel_transform(const RadialKernel& k);
// Profile of the sharp ball kernel (cosh t)^{-1/2} 1_{[0,t]}
AbelProfile abel_sharp(double t);
// Profile of (cosh t)^{-1/2} eta((r - t)/sigma) 1_{[0,t]}; allows sigma >= t
// internally for time averages starting at t = 0.
AbelProfile abel_smooth(double t, double sigma, const std::function<double(double)>& eta);

// lambda -> 2 int_0^support cos(lambda u) g(u) du
double fourier_of_abel(const AbelProfile& g, double lambda, const QuadOptions& opt = {});
std::vector<double> fourier_of_abel(const AbelProfile& g, const std::vector<double>& lambdas,
                                    const QuadOptions& opt = {});

// Helgason transform of a function supported in the hyperbolic ball of the
// given radius about 0.
struct HelgasonOptions {
    int radial_order = 24;
    int angular_nodes = 96;
    double max_panel = 0.5;
};
std::function<cplx(double, const BoundaryPoint&)> helgason_forward(std::function<double(const DiscPoint&)> u,
                                                                   double support_radius,
                                                                   const HelgasonOptions& opt = {});

// K_a(z, w) from the complete symbol.
struct KernelOptions {
    int lambda_order = 48;
    int boundary_nodes = 128;
};
std::function<double(const DiscPoint&, const DiscPoint&)> kernel_from_symbol(const Symbol& a,
                                                                           const PlancherelWeight& weight,
                                                                           const KernelOptions& opt = {});

// hs_constant * int_B(0,R) int_B int |a|^2 e^{<z,b>} w(lambda) for a symbol
// supported in z within the hyperbolic ball of radius z_support.
double hs_norm_disc(const Symbol& a, const PlancherelWeight& weight, double z_support, int radial_order = 16,
                    int angular_nodes = 32, int lambda_order = 32);

// Smooth bump exp(1 - 1/(1 - x^2)) rescaled to [lo, hi].
SpectralMultiplier bump_multiplier(double lo, double hi);

// Kernel truncated to [0, cut] (the transforms of the truncation are exact
// for both routes of the triangle).
RadialKernel truncate(const RadialKernel& k, double cut);

}  // namespace hqe
