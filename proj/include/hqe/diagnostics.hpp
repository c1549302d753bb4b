#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqe/fuchsian.hpp"
#include "hqe/propagators.hpp"
#include "hqe/transforms.hpp"

namespace hqe {

// Sampled identities of the disc model.  Errors are maxima over the samples.
struct GeometryIdentityReport {
    std::size_t samples = 0;
    double cocycle = 0.0;        // |<gz, gb> - <z, b> - <g0, gb>|
    double poisson = 0.0;        // |P(gz, gb) |d(gb)/db| - P(z, b)| / max(1, P(z, b)), finite difference
    double ank_round_trip = 0.0; // both directions
    double cosh_distance = 0.0;  // relative error of cosh d(0, a_s n_u 0) = (u^2 e^s + 2 cosh s) / 2
    double isometry = 0.0;
    double tolerance = 1e-8;
    bool pass = false;
};
GeometryIdentityReport geometry_identity_check(std::size_t samples, std::uint64_t seed);

// phi_lambda by the boundary integral against the large-t series.
struct SphericalRow {
    double lambda = 0.0, t = 0.0, integral = 0.0, series = 0.0, diff = 0.0;
};
struct SphericalReport {
    std::vector<SphericalRow> rows;
    double max_diff = 0.0;
    std::vector<double> c_lambdas, c_error;  // | |c|^{-2} - pi l tanh(pi l) |
    double max_c_error = 0.0;
    bool pass = false;
};
SphericalReport spherical_dual_check(const std::vector<double>& lambdas, const std::vector<double>& ts);

// Selberg route against Fourier of the Abel profile, for the sharp and the
// smooth ball kernels, plus the radial Helgason reduction.
struct TriangleRow {
    std::string kernel;
    double t = 0.0, lambda = 0.0;
    double selberg = 0.0, abel_numeric = 0.0, abel_closed = 0.0;
    double diff = 0.0;
};
struct TriangleReport {
    std::vector<TriangleRow> rows;
    double max_diff = 0.0;
    double helgason_diff = 0.0;        // | |u^(l, b)| - 2 pi |int u phi sinh| |
    double helgason_anisotropy = 0.0;  // spread over b
    bool pass = false;
};
TriangleReport transform_triangle(const std::vector<double>& ts, const std::vector<double>& lambdas, double sigma);

// sup over t in [1, 40] of |k_rho(t)| e^{t/2} (1 + t)^N for a bump rho.
struct DecayRow {
    Interval bump;
    int N = 0;
    double sup = 0.0, sup_refined = 0.0, rel_change = 0.0;
    double argmax = 0.0;
};
struct DecayReport {
    std::vector<DecayRow> rows;
    double max_rel_change = 0.0;
    bool pass = false;
};
DecayReport kernel_decay(const std::vector<Interval>& bumps, int max_N, const PlancherelWeight& weight);

// Abel inner quantity over an (r, lambda) matrix and the delta h envelope
// 4 C (1 - e^{-sigma/2}) with C the sup of the quantity over I x [1, t].
struct AbelInnerReport {
    std::vector<double> radii, lambdas;
    std::vector<std::vector<double>> values;  // [lambda][r]
    std::vector<double> ratio;                // max / min over r, per lambda (informational)
    std::vector<double> sup_over_lambda;      // per r
    double max_ratio = 0.0;                   // max / min over r of sup_over_lambda
    struct EnvelopeRow {
        double sigma = 0.0, t = 0.0, lambda_at = 0.0, delta_h = 0.0, envelope = 0.0, route_diff = 0.0;
    };
    Interval I;
    double constant = 0.0;
    std::vector<EnvelopeRow> envelope;
    bool bounded = false;
    bool envelope_holds = false;
    bool pass = false;
};
AbelInnerReport abel_inner_matrix(const std::vector<double>& radii, const std::vector<double>& lambdas, Interval I,
                              const std::vector<double>& sigmas, const std::vector<double>& ts);

// Orbit ball against exhaustive words, and cyclic injectivity radii.
struct OrbitReport {
    double radius = 0.0;
    std::size_t ball_count = 0, oracle_count = 0;
    std::size_t completeness_added = 0;  // extra elements when word_cap grows by 2
    double systole = 0.0, systole_oracle = 0.0;
    std::vector<double> cyclic_L, cyclic_injrad;
    double cyclic_error = 0.0;
    bool pass = false;
};
OrbitReport orbit_check(double radius, int oracle_length = 8);

// The truncated-periodisation HS inequality over three groups, two kernels
// and two truncation radii.
struct HsCase {
    std::string group, kernel;
    double r = 0.0;
    HsBoundReport report;
};
struct HsMatrixReport {
    std::vector<HsCase> cases;
    bool pass = false;
};
HsMatrixReport hs_bound_matrix(std::size_t n_mc, std::uint64_t seed);

}  // namespace hqe
