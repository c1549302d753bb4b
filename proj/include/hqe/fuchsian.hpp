#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hqe/geometry.hpp"
#include "hqe/rng.hpp"
#include "hqe/transforms.hpp"

namespace hqe {

// Truncation cutoff for periodised kernels: 1 - (3x^2 - 2x^3) on [0, 1].
double default_chi(double x);

// Letters 0..g-1 are the generators, g..2g-1 their inverses.
struct FuchsianGroup {
    std::string label;
    std::vector<GroupElement> generators;
    std::optional<double> covolume;
    std::vector<int> relator;  // empty for free groups

    int rank() const { return static_cast<int>(generators.size()); }
    int letter_count() const { return 2 * rank(); }
    GroupElement letter(int i) const { return i < rank() ? generators[i] : generators[i - rank()].inverse(); }
    int inverse_letter(int i) const { return i < rank() ? i + rank() : i - rank(); }
    GroupElement evaluate(const std::vector<int>& word) const;
    double max_generator_displacement() const;

    static FuchsianGroup trivial();
    static FuchsianGroup cyclic(double translation_length);
    static FuchsianGroup bolza();
};

struct OrbitElement {
    GroupElement g;
    double displacement = 0.0;  // d(center, g center)
    cplx image;                 // g center
    double image_omr2 = 1.0;    // 1 - |g center|^2, computed without cancellation
    std::vector<int> word;
};

struct OrbitBall {
    DiscPoint center;
    double radius = 0.0;
    std::vector<OrbitElement> elements;  // sorted by displacement, identity first
};

struct EnumerationOptions {
    double slack = -1.0;            // < 0: automatic
    std::size_t budget = 1000000;   // visited elements before BudgetExceeded
};

// Breadth-first search over reduced words.  Branches whose displacement
// exceeds R + slack are pruned.  For cocompact groups the automatic mode
// first reduces the center into the Dirichlet domain and uses slack
// circumradius + |center|, which is complete; otherwise it is twice the
// largest generator displacement.
OrbitBall orbit_enumerate(const FuchsianGroup& group, const DiscPoint& center, double R, int word_cap,
                          const EnumerationOptions& opt = {});

// Exhaustive reduced words up to max_length.
struct WordOracle {
    std::size_t distinct_within = 0;  // distinct elements with displacement <= radius at 0
    double systole_upper = infinity;  // min translation length over nontrivial words
    int max_length = 0;
};
WordOracle word_oracle(const FuchsianGroup& group, double radius, int max_length = 8);

struct DirichletDomain {
    std::vector<cplx> vertices;                // counterclockwise, Poincare disc
    std::vector<GroupElement> side_elements;   // side k (vertex k to k+1) bisects 0 and g_k 0
    std::vector<std::vector<int>> side_words;
    std::vector<int> partner;                  // side carrying g_k^{-1}
    std::vector<double> angles;                // interior angle at each vertex
    double area = 0.0;
    double circumradius = 0.0;                 // max hyperbolic norm of a vertex

    bool contains(const DiscPoint& z, double tol = 1e-12) const;

    struct Reduced {
        DiscPoint point;           // inside the domain
        GroupElement g;            // original = g . point
        std::vector<int> word;     // word of g
    };
    Reduced reduce(const DiscPoint& z) const;
};

// Dirichlet domain centred at 0; throws DomainError for groups without a
// compact one.
DirichletDomain dirichlet_domain(const FuchsianGroup& group);

// Shortest translation length (exact for cocompact groups via the Dirichlet
// domain, L for the cyclic preset, infinity for the trivial group).
double systole(const FuchsianGroup& group);

struct CoverSurface {
    FuchsianGroup base;
    int degree = 1;
    std::vector<std::vector<int>> permutations;  // i . g_k for every generator
    std::uint64_t seed = 0;

    double volume() const;
    // sheet . word under the right action
    int act(int sheet, const std::vector<int>& word) const;
    std::string id() const;
    static CoverSurface trivial_cover(const FuchsianGroup& base);
};

CoverSurface random_cover(const FuchsianGroup& base, int degree, std::uint64_t seed);
bool is_transitive(const CoverSurface& cover);

struct InjRad {
    double value = 0.0;
    bool lower_bound_only = false;
};

// InjRad at z (on the given sheet of a cover): half the smallest displacement
// among elements fixing the sheet, searched within displacement search_R.
InjRad injectivity_radius_at(const FuchsianGroup& group, const DiscPoint& z, double search_R);
InjRad injectivity_radius_at(const CoverSurface& surface, const DiscPoint& z, int sheet, double search_R);

// Uniform sampling of the Dirichlet domain by rejection from the
// circumscribed hyperbolic disc.
DiscPoint sample_domain(const DirichletDomain& domain, Rng& rng);
DiscPoint sample_ball(const DiscPoint& center, double radius, Rng& rng);

struct BsEstimate {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = false;
    std::string reason;
};

BsEstimate bs_statistic(const CoverSurface& surface, double R, std::size_t n_samples, std::uint64_t seed);

// z, w -> sum over gamma of K(z, gamma w) chi(d(z, gamma w)/r).  Arguments
// must have hyperbolic norm at most max_norm.
class TruncatedPeriodization {
public:
    TruncatedPeriodization(std::function<double(const DiscPoint&, const DiscPoint&)> kernel, const FuchsianGroup& group,
                           double r, std::function<double(double)> chi, double max_norm);
    double operator()(const DiscPoint& z, const DiscPoint& w) const;
    std::size_t orbit_size() const { return ball_.elements.size(); }

private:
    std::function<double(const DiscPoint&, const DiscPoint&)> kernel_;
    std::function<double(double)> chi_;
    double r_;
    double max_norm_;
    OrbitBall ball_;
};

TruncatedPeriodization periodize_truncated(std::function<double(const DiscPoint&, const DiscPoint&)> kernel,
                                           const FuchsianGroup& group, double r,
                                           std::function<double(double)> chi = default_chi, double max_norm = 3.0);

struct HsBoundReport {
    Estimate lhs;                 // int_Z int_D |K^{Gamma,r}|^2
    double first_term = 0.0;      // Vol(Z) * 2pi int |k|^2 sinh
    double second_term = 0.0;     // explicit counting form
    double literal_second_term = 0.0;  // e^{2r}/l Vol{InjRad<r} sup|K|^2, implied constant 1
    double rhs = 0.0;
    Estimate small_injrad_volume;
    double region_volume = 0.0;
    double systole = 0.0;
    double kernel_sup = 0.0;
    bool pass = false;
    bool pass_literal_form = false;
};

// Region: the Dirichlet domain for cocompact groups; otherwise the ball of
// radius region_radius about 0 (must lie in a fundamental domain).
HsBoundReport hs_bound_check(const RadialKernel& k, const FuchsianGroup& group, double r, std::size_t n_mc,
                             std::uint64_t seed, double region_radius = 0.0,
                             const std::function<double(double)>& chi = default_chi);

}  // namespace hqe
