#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hqe/eigendata.hpp"
#include "hqe/fuchsian.hpp"
#include "hqe/observables.hpp"
#include "hqe/transforms.hpp"

namespace hqe {

// J in nu, I = sqrt(J - 1/4) in lambda, I_prime widened by margin * |I| on
// both sides (clipped at 0) for the cutoff rho.
struct SpectralWindow {
    Interval J, I, I_prime;

    static SpectralWindow from_nu(Interval J, double margin = 0.1);
};

// Interval [0, L] with Dirichlet modes sqrt(2/L) sin(k pi x / L), nu_k = (k pi / L)^2.
struct Toy1dResult {
    double variance = 0.0;
    double bound = 0.0;  // M^2 / N
    int count = 0;
    std::vector<int> modes;
    std::vector<double> terms;
    double quadrature_error = 0.0;
};
Toy1dResult toy1d_variance(double L, Interval window, const std::function<double(double)>& observable,
                           double sup_bound, const std::vector<double>& breakpoints = {}, double tol = 1e-10);

struct VarianceReport {
    SpectralWindow window;
    std::string surface_id;
    std::string weight;
    std::uint64_t seed = 0;
    std::vector<double> nu, matrix_elements, limit_terms, terms;
    int count = 0;
    double variance = 0.0;
    double std_error = 0.0;        // sample std of the terms / sqrt(N)
    double limit_error = 0.0;      // largest Monte Carlo error of a limit term
    double volume = 0.0;
    double sum_over_volume = 0.0;  // sum of terms / Vol(SX), the unit-tangent normalisation
};

// <psi_j, A psi_j> by mesh quadrature.  Only multiplication observables can
// be applied to sampled eigenvectors; others raise DomainError.
VarianceReport quantum_variance(const Observable& A, const EigenData& data, const SpectralWindow& window,
                                const PlancherelWeight& weight, std::uint64_t seed, const SampleRegion& region,
                                double surface_volume, std::size_t n_mc = 20000);

// (1 / 2 pi) int_{sqrt(a - 1/4)}^{sqrt(b - 1/4)} s tanh(pi s) ds
double weyl_predicted(Interval J);

struct WeylReport {
    double measured = 0.0;  // N / Vol
    double predicted = 0.0;
    int count = 0;
    double volume = 0.0;
    double ratio() const { return predicted > 0 ? measured / predicted : 0.0; }
};
// WindowNotResolved unless max nu > 1.2 sup J.
WeylReport weyl_ratio(const EigenData& data, Interval J, double surface_volume);

// Measured constants entering the variance budget.
struct PipelineInputs {
    double theta_norm = 0.0;        // sup over I' of the squared theta-derivative norm
    double kernel_sup = 0.0;        // bound on sup |K| of the time-averaged sandwich
    double locality_S = 0.0;
    double systole = 0.0;
    double bs_fraction = 0.0;       // Vol{InjRad < r + S_T} / Vol
    double kernel_rho_l2sq = 0.0;   // ||K_rho||_2^2 via Plancherel
    double nevo_n = 2.0;            // assumed, not derived
    // general (non mean-zero) observables only
    double bs_fraction_mean = 0.0;  // Vol{InjRad < s + 2T} / Vol
    double mean_kernel_sup = 0.0;   // sup |K| of the averaged mean multiplier
};

struct PipelineBounds {
    double T = 0.0, r = 0.0, s = 0.0;
    double S_T = 0.0;
    double C_rho = 0.0, C_rho_prime = 0.0;
    double time_term = 0.0;        // theta_norm / ((1 - 1/n) T)
    double geometric_term = 0.0;   // 2 (1 + (S_T/r)^2) C'_rho sup|K|^2 e^{2(r + S_T)} / l * BS
    double propagation_term = 0.0; // 2 (S_T/r)^2 e^{2 S_T} sup|K|^2 ||K_rho||^2
    double truncation_term = 0.0;  // 2 Vol(B(S_T)) sup|K|^2 / (1 + r)^2
    double mean_term = 0.0;        // e^{2(s + 2T)} / l * BS(s + 2T) * sup|K_m|^2
    double total = 0.0;
    std::string dominant;
};
PipelineBounds variance_pipeline_bounds(const PipelineInputs& in, double T, double r, double s = 0.0);

struct PipelineConfig {
    double sigma = 0.1;
    double nevo_n = 2.0;
    std::size_t theta_samples = 2000;
    std::size_t bs_samples = 2000;
    int kernel_times = 8;
    std::uint64_t seed = 1;
};
PipelineInputs measure_pipeline_inputs(const Observable& A, const CoverSurface& surface, double T, double r, double s,
                                       const SpectralWindow& window, const PlancherelWeight& weight,
                                       const PipelineConfig& cfg = {});

// Enough modes to pass 1.2 sup J with a 50% margin on the Weyl count.
int suggested_mode_count(double surface_volume, Interval J);

// Cover tower experiment: quantum variance of a mean-zero multiplication
// observable on covers of increasing degree, each solved at h and 2h.
struct TowerOptions {
    std::vector<int> degrees{1, 2, 4};
    double h = 0.05;
    Interval J{1.0, 4.0};
    double bump_radius = 1.4;
    std::uint64_t seed = 1;
};

struct TowerLevel {
    int degree = 1;
    std::string surface_id;
    int n_modes = 0;
    double nu0 = 0.0;
    VarianceReport fine, coarse;
    double error_bar = 0.0;  // standard error + |V_h - V_2h|
    WeylReport weyl;
};

struct TowerReport {
    std::vector<TowerLevel> levels;
    bool nonincreasing = false;
    double weyl_ratio = 0.0;
    bool weyl_pass = false;
    bool pass = false;
};
TowerReport run_tower(const TowerOptions& opt);

}  // namespace hqe
