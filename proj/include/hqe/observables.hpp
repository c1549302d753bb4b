#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hqe/fuchsian.hpp"
#include "hqe/propagators.hpp"
#include "hqe/rng.hpp"
#include "hqe/transforms.hpp"

namespace hqe {

using ComplexField = std::function<cplx(const DiscPoint&)>;
using ScalarField = std::function<double(const DiscPoint&)>;

enum class ObservableKind { multiplication, finite_range, differential };

// Coefficients in the orthonormal frame s d/dx, s d/dy with s = (1 - |z|^2)/2,
// so that A u = c0 u + cx s u_x + cy s u_y + s^2 (cxx u_xx + cxy u_xy + cyy u_yy).
// Empty functions count as zero.
struct FrameCoefficients {
    ScalarField c0, cx, cy, cxx, cxy, cyy;
};

// |A u(x)| <= C ||u||_{C^k(B(x, S))}, with the C^k norm taken as
// sup of sum_{|alpha| <= k} s^|alpha| |d^alpha u|.
struct LocalityConstants {
    double C = 1.0;
    double S = 0.0;
    int k = 0;
};

struct Observable {
    ObservableKind kind = ObservableKind::multiplication;
    std::string name;
    ScalarField multiplier;
    std::optional<double> multiplier_mean;  // exact surface mean when known
    std::function<double(const DiscPoint&, const DiscPoint&)> kernel;
    std::optional<RadialKernel> radial;      // kernel(z, w) = radial(d(z, w)) when set
    FrameCoefficients coefficients;
    int order = 0;
    LocalityConstants locality;

    cplx apply(const ComplexField& u, const DiscPoint& z) const;
    double apply(const ScalarField& u, const DiscPoint& z) const;
};

Observable multiplication_observable(std::string name, ScalarField a, double sup_abs);
Observable radial_kernel_observable(std::string name, const RadialKernel& profile);
Observable differential_observable(std::string name, FrameCoefficients c, int order, double coefficient_sup);
Observable laplacian_observable();  // -Delta
// a(z) = amplitude * bump(d(z, Gamma 0) / radius) minus its surface mean;
// radius must not exceed half the systole.
Observable orbit_bump_observable(const FuchsianGroup& group, double radius, double amplitude = 1.0,
                                 bool subtract_mean = true);

// Polar product rule on B(z, S): Gauss-Legendre in the distance, periodic
// trapezoid in the angle.
struct PolarRule {
    std::vector<double> rho, rho_weight;  // rho_weight includes sinh(rho)
    int angles = 64;
};
PolarRule polar_rule(double radius, const std::vector<double>& breakpoints = {}, int order = 24, int angles = 64);

// Fourth-order central-difference frame derivatives up to order two at z
// with step 1e-3 (1 - |z|^2); StencilOutOfDomain near the boundary.
struct FrameJet {
    cplx value, dx, dy, dxx, dxy, dyy;  // already multiplied by the frame scale
};
FrameJet frame_jet(const ComplexField& u, const DiscPoint& z);

// Plane wave e^{(1/2 + i lambda) <z, b>}
cplx plane_wave(const DiscPoint& z, double lambda, const BoundaryPoint& b);

cplx complete_symbol(const Observable& A, const DiscPoint& z, double lambda, const BoundaryPoint& b);
Symbol symbol_of(const Observable& A);

// Boundary point reached from z in direction theta of the translated frame,
// and its inverse.
BoundaryPoint boundary_direction(const DiscPoint& z, double theta);
double direction_angle(const DiscPoint& z, const BoundaryPoint& b);

struct AngularDecomposition {
    cplx mean;
    std::function<cplx(double)> zero_mean_part;
    double residual_mean = 0.0;  // |mean of zero_mean_part| on the final rule
    int nodes = 0;
};
AngularDecomposition angular_decompose(const Symbol& a, const DiscPoint& z, double lambda);

// Integral over theta of a_lambda at the frame (z, theta); (A1) asks for zero.
struct A1Check {
    cplx integral;
    bool holds = false;
};
A1Check condition_a1(const Symbol& a, const DiscPoint& z, double lambda, double tol = 1e-9);

// Region of a surface that Monte Carlo integrals run over.
struct SampleRegion {
    std::string label;
    double volume = 0.0;
    std::function<DiscPoint(Rng&)> sample;

    static SampleRegion of_group(const FuchsianGroup& group);  // Dirichlet domain
    static SampleRegion ball(double radius);
};

// sup over the lambda grid of (1 / Vol(SX)) int_{SX} |d^2_theta a_lambda|^2;
// the returned error is the standard error at the maximising lambda.
Estimate theta_second_derivative_norm(const Symbol& a, const std::vector<double>& lambdas, const SampleRegion& region,
                                      std::size_t n_mc, std::uint64_t seed);

// Kernel of P_t A P_t with the smooth ball kernel; exactly zero beyond
// 2t + S.
double smooth_sandwich_kernel(const Observable& A, double t, double sigma, const DiscPoint& z, const DiscPoint& w,
                              const std::function<double(double)>& eta = default_eta, int order = 16);

// C * sup ||f_w||_{C^k} * ||K_t||_{L^1} where f_w = k_t(d(., w)); bounds
// the sandwich kernel uniformly.
struct SandwichBound {
    double value = 0.0;
    double ck_norm = 0.0;
    double kernel_l1 = 0.0;
};
SandwichBound sandwich_sup_bound(const Observable& A, double t, double sigma,
                                 const std::function<double(double)>& eta = default_eta);

// Measured ratio |A u(x)| / ||u||_{C^k(B(x,S))} over a panel of test
// functions and points.
struct LocalityReport {
    double max_ratio = 0.0;
    double declared = 0.0;
    int functions = 0;
    bool pass = false;
};
LocalityReport verify_locality(const Observable& A, int n_functions = 20, std::uint64_t seed = 1);

// (1 / Vol) int_X int_D K_A(x, y) phi_lambda(d(x, y)) dy dx
Estimate limit_term(const Observable& A, double lambda, const SampleRegion& region, std::size_t n_mc,
                    std::uint64_t seed);

struct ErrorOpsBounds {
    double e_bound = 0.0;         // max over lambda of int_r^inf |k_rho phi sinh|
    double e_exact = 0.0;         // max over lambda of |int k_rho (1 - chi(t/r)) phi sinh|
    double r_hs_bound = 0.0;      // right side with implied constant 1
    double chi_prime_factor = 0.0;  // ||chi'||^2, a further factor of the same bound
    double kernel_sup = 0.0;
    double propagation = 0.0;
    double rho_l2 = 0.0;          // int |rho|^2 lambda tanh(2 pi lambda)
    double small_injrad_fraction = 0.0;
    double systole = 0.0;
};
ErrorOpsBounds error_ops_bounds(const Observable& A, const SpectralMultiplier& rho, double r,
                                const CoverSurface& surface, const std::vector<double>& lambdas,
                                std::size_t bs_samples = 4000, std::uint64_t seed = 1,
                                const std::function<double(double)>& chi = default_chi);

}  // namespace hqe
