#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "hqe/diagnostics.hpp"
#include "hqe/eigendata.hpp"
#include "hqe/fem.hpp"
#include "hqe/presets.hpp"
#include "hqe/propagators.hpp"
#include "hqe/variance.hpp"

namespace hqe::cli {

using nlohmann::json;

Interval parse_interval(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("expected an interval a:b, got '" + text + "'");
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        Interval iv{std::stod(a, &used), 0.0};
        if (used != a.size()) throw std::invalid_argument(a);
        iv.hi = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        if (!(iv.hi >= iv.lo)) throw UsageError("interval '" + text + "' is inverted");
        return iv;
    } catch (const std::logic_error&) {
        throw UsageError("expected an interval a:b, got '" + text + "'");
    }
}

namespace {

std::string cell(const std::string& s) { return s; }
std::string cell(const char* s) { return s; }
template <class T>
std::string cell(T v) {
    if constexpr (std::is_integral_v<T>)
        return std::to_string(v);
    else
        return format_double(static_cast<double>(v));
}
template <class... T>
std::vector<std::string> row(const T&... v) {
    return {cell(v)...};
}

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

std::string word_string(const std::vector<int>& word, int rank) {
    std::string s;
    for (int letter : word) {
        if (!s.empty()) s += ' ';
        s += letter < rank ? "g" + std::to_string(letter) : "G" + std::to_string(letter - rank);
    }
    return s.empty() ? "e" : s;
}

CoverSurface bolza_cover(int degree, std::uint64_t seed) {
    const FuchsianGroup bolza = FuchsianGroup::bolza();
    return degree == 1 ? CoverSurface::trivial_cover(bolza) : random_cover(bolza, degree, seed);
}

// ---------------------------------------------------------------------------

class Toy1d : public Command {
public:
    std::string name() const override { return "toy1d"; }
    std::string description() const override { return "Dirichlet interval model: variance against M^2/N"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--L", L_, "interval lengths")->delimiter(',');
        sub.add_option("--window", window_, "nu window a:b");
        sub.add_option("--observables", observables_, "step, cos, two_level, constant")->delimiter(',');
        sub.add_option("--tol", tol_, "quadrature tolerance");
    }
    json parameters() const override {
        return {{"L", L_}, {"window", window_}, {"observables", observables_}, {"tol", tol_}};
    }
    CommandResult run(const RunContext&) override {
        const Interval window = parse_interval(window_);
        CommandResult res;
        CsvTable table({"L", "observable", "N", "N_over_L", "variance", "bound", "quadrature_error"});
        json rows = json::array();
        std::map<std::string, std::vector<std::pair<double, double>>> by_obs;
        for (double L : L_) {
            for (const auto& name : observables_) {
                std::function<double(double)> a;
                std::vector<double> cuts;
                if (name == "step") {
                    // alternating sign on cells of width 0.7
                    a = [](double x) { return static_cast<long>(std::floor(x / 0.7)) % 2 == 0 ? 1.0 : -1.0; };
                    for (double x = 0.7; x < L; x += 0.7) cuts.push_back(x);
                } else if (name == "cos") {
                    a = [](double x) { return std::cos(x); };
                } else if (name == "two_level") {
                    a = [L](double x) { return x < L / 3 ? 1.0 : -0.5; };
                    cuts.push_back(L / 3);
                } else if (name == "constant") {
                    a = [](double) { return 0.7; };
                } else {
                    throw UsageError("toy1d: unknown observable '" + name + "'");
                }
                const Toy1dResult r = toy1d_variance(L, window, a, 1.0, cuts, tol_);
                table.add_row(row(L, name, r.count, r.count / L, r.variance, r.bound, r.quadrature_error));
                rows.push_back({{"L", L},
                                {"observable", name},
                                {"N", r.count},
                                {"variance", r.variance},
                                {"bound", r.bound},
                                {"quadrature_error", r.quadrature_error}});
                res.check("variance_le_bound/" + name + "/L=" + format_double(L), r.variance <= r.bound);
                if (name == "constant") res.check("constant_zero/L=" + format_double(L), r.variance <= 1e-20);
                by_obs[name].emplace_back(L, r.variance);
            }
        }
        if (L_.size() > 1)
            for (auto& [name, series] : by_obs) {
                if (name == "constant") continue;
                std::sort(series.begin(), series.end());
                res.check("variance_decreases/" + name, series.back().second < series.front().second);
            }
        res.results["rows"] = rows;
        res.tables.emplace_back("toy1d", std::move(table));
        return res;
    }

private:
    std::vector<double> L_{100.0};
    std::string window_ = "1:2";
    std::vector<std::string> observables_{"step", "cos", "two_level"};
    double tol_ = 1e-10;
};

class GeometryCheck : public Command {
public:
    std::string name() const override { return "geometry-check"; }
    std::string description() const override { return "sampled disc-model identities"; }
    void add_options(CLI::App& sub) override { sub.add_option("--samples", samples_, "random samples per identity"); }
    json parameters() const override { return {{"samples", samples_}}; }
    CommandResult run(const RunContext& ctx) override {
        const auto rep = geometry_identity_check(samples_, ctx.seed);
        CommandResult res;
        CsvTable table({"identity", "max_error", "tolerance"});
        const std::pair<const char*, double> items[] = {{"busemann_cocycle", rep.cocycle},
                                                        {"poisson_invariance", rep.poisson},
                                                        {"ank_round_trip", rep.ank_round_trip},
                                                        {"cosh_distance", rep.cosh_distance},
                                                        {"isometry", rep.isometry}};
        for (const auto& [id, err] : items) {
            table.add_row(row(id, err, rep.tolerance));
            res.results[id] = err;
            res.check(id, err <= rep.tolerance);
        }
        res.results["samples"] = rep.samples;
        res.results["tolerance"] = rep.tolerance;
        res.tables.emplace_back("identities", std::move(table));
        return res;
    }

private:
    std::size_t samples_ = 10000;
};

class Spherical : public Command {
public:
    std::string name() const override { return "spherical"; }
    std::string description() const override { return "spherical function: boundary integral against series"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--lambda", lambdas_)->delimiter(',');
        sub.add_option("--t", ts_)->delimiter(',');
    }
    json parameters() const override { return {{"lambda", lambdas_}, {"t", ts_}}; }
    CommandResult run(const RunContext&) override {
        const auto rep = spherical_dual_check(lambdas_, ts_);
        CommandResult res;
        CsvTable table({"lambda", "t", "integral", "series", "diff"});
        for (const auto& r : rep.rows) table.add_row(row(r.lambda, r.t, r.integral, r.series, r.diff));
        CsvTable ctab({"lambda", "inv_abs2_error"});
        for (std::size_t i = 0; i < rep.c_lambdas.size(); ++i) ctab.add_row(row(rep.c_lambdas[i], rep.c_error[i]));
        res.results["max_diff"] = rep.max_diff;
        res.results["max_c_error"] = rep.max_c_error;
        res.check("integral_vs_series", rep.max_diff <= 1e-6);
        res.check("c_function_modulus", rep.max_c_error <= 1e-10);
        res.tables.emplace_back("phi", std::move(table));
        res.tables.emplace_back("c_function", std::move(ctab));
        return res;
    }

private:
    std::vector<double> lambdas_{0.5, 1.0, 2.0, 3.0};
    std::vector<double> ts_{1.0, 2.0, 5.0, 10.0};
};

class Selberg : public Command {
public:
    std::string name() const override { return "selberg"; }
    std::string description() const override { return "transform triangle for the ball kernels"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--t", ts_)->delimiter(',');
        sub.add_option("--lambda", lambdas_)->delimiter(',');
        sub.add_option("--sigma", sigma_);
    }
    json parameters() const override { return {{"t", ts_}, {"lambda", lambdas_}, {"sigma", sigma_}}; }
    CommandResult run(const RunContext&) override {
        const auto rep = transform_triangle(ts_, lambdas_, sigma_);
        CommandResult res;
        CsvTable table({"kernel", "t", "lambda", "selberg", "abel_numeric", "abel_closed", "diff"});
        for (const auto& r : rep.rows)
            table.add_row(row(r.kernel, r.t, r.lambda, r.selberg, r.abel_numeric, r.abel_closed, r.diff));
        res.results["max_diff"] = rep.max_diff;
        res.results["helgason_diff"] = rep.helgason_diff;
        res.results["helgason_anisotropy"] = rep.helgason_anisotropy;
        res.results["abel_route_normalization"] = abel_route_normalization;
        res.check("triangle", rep.max_diff <= 1e-6);
        res.check("helgason_radial", rep.helgason_diff <= 1e-6);
        res.check("helgason_isotropy", rep.helgason_anisotropy <= 1e-8);
        res.tables.emplace_back("triangle", std::move(table));
        return res;
    }

private:
    std::vector<double> ts_{1.0, 3.0, 6.0};
    std::vector<double> lambdas_{0.5, 1.0, 2.0};
    double sigma_ = 0.1;
};

class KernelDecay : public Command {
public:
    std::string name() const override { return "kernel-decay"; }
    std::string description() const override { return "decay of inverse Selberg kernels of bump multipliers"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--bumps", bumps_, "lambda supports a:b")->delimiter(',');
        sub.add_option("--max-N", max_N_);
    }
    json parameters() const override { return {{"bumps", bumps_}, {"max_N", max_N_}}; }
    CommandResult run(const RunContext& ctx) override {
        std::vector<Interval> ivs;
        for (const auto& b : bumps_) ivs.push_back(parse_interval(b));
        const auto rep = kernel_decay(ivs, max_N_, ctx.weight);
        CommandResult res;
        CsvTable table({"bump_lo", "bump_hi", "N", "sup", "argmax", "sup_refined", "rel_change"});
        json rows = json::array();
        for (const auto& r : rep.rows) {
            table.add_row(row(r.bump.lo, r.bump.hi, r.N, r.sup, r.argmax, r.sup_refined, r.rel_change));
            rows.push_back({{"bump", interval_json(r.bump)}, {"N", r.N}, {"sup", r.sup}, {"rel_change", r.rel_change}});
            res.check("finite_and_stable/" + format_double(r.bump.lo) + ":" + format_double(r.bump.hi) +
                          "/N=" + std::to_string(r.N),
                      std::isfinite(r.sup) && r.rel_change < 0.01);
        }
        // sampled kernel of the first bump with the refinement difference as error
        CsvTable curve({"t", "value", "est_error"});
        if (!ivs.empty()) {
            const SpectralMultiplier rho = bump_multiplier(ivs[0].lo, ivs[0].hi);
            InverseSelbergOptions fine;
            fine.order *= 2;
            const RadialKernel k = inverse_selberg(rho, ctx.weight), k2 = inverse_selberg(rho, ctx.weight, fine);
            for (int i = 0; i <= 400; ++i) {
                const double t = 0.1 * i;
                curve.add_row(row(t, k(t), std::abs(k(t) - k2(t))));
            }
            res.results["kernel_support"] = k.support;
        }
        res.results["rows"] = rows;
        res.results["max_rel_change"] = rep.max_rel_change;
        res.tables.emplace_back("decay", std::move(table));
        res.tables.emplace_back("k_rho", std::move(curve));
        return res;
    }

private:
    std::vector<std::string> bumps_{"1:2", "0.5:1", "2:3"};
    int max_N_ = 4;
};

class Positivity : public Command {
public:
    std::string name() const override { return "prop33"; }
    std::string description() const override { return "positivity certificate for the time-averaged multiplier"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--sigma", sigma_);
        sub.add_option("--T", T_)->delimiter(',');
        sub.add_option("--window", window_, "nu window a:b");
        sub.add_option("--spacing", spacing_, "lambda grid spacing");
    }
    json parameters() const override {
        return {{"sigma", sigma_}, {"T", T_}, {"window", window_}, {"spacing", spacing_}};
    }
    CommandResult run(const RunContext&) override {
        const SpectralWindow w = SpectralWindow::from_nu(parse_interval(window_));
        const auto cert = positivity_certificate(w.I, sigma_, T_, lambda_grid(w.I, spacing_));
        const auto a1 = abel_inner_constant(w.I, {1.0, 20.0}, 0.05, 0.05);
        CommandResult res;
        CsvTable table({"T", "c_min", "argmin", "c_min_sharp"});
        for (std::size_t i = 0; i < cert.T_list.size(); ++i)
            table.add_row(row(cert.T_list[i], cert.c_min[i], cert.argmin[i], cert.c_min_sharp[i]));
        res.results = {{"I", interval_json(cert.I)},
                       {"sigma", cert.sigma},
                       {"T_list", cert.T_list},
                       {"c_min", cert.c_min},
                       {"argmin", cert.argmin},
                       {"c_min_sharp", cert.c_min_sharp},
                       {"spread_upper_half", cert.spread_upper_half},
                       {"abel_inner_constant", a1.value},
                       {"abel_inner_at", {{"r", a1.r_at}, {"lambda", a1.lambda_at}}},
                       {"pass", cert.pass}};
        res.check("positive", cert.positive);
        res.check("stable", cert.stable);
        res.tables.emplace_back("H_T", std::move(table));
        return res;
    }

private:
    double sigma_ = 0.1;
    std::vector<double> T_{10.0, 20.0, 40.0};
    std::string window_ = "1:4";
    double spacing_ = 0.02;
};

class AbelInner : public Command {
public:
    std::string name() const override { return "lemma-a1"; }
    std::string description() const override { return "Abel inner integral bound and the delta h envelope"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--r", radii_)->delimiter(',');
        sub.add_option("--lambda", lambdas_)->delimiter(',');
        sub.add_option("--sigma", sigmas_)->delimiter(',');
        sub.add_option("--t", ts_)->delimiter(',');
        sub.add_option("--window", window_, "nu window a:b for the envelope");
    }
    json parameters() const override {
        return {{"r", radii_}, {"lambda", lambdas_}, {"sigma", sigmas_}, {"t", ts_}, {"window", window_}};
    }
    CommandResult run(const RunContext&) override {
        const SpectralWindow w = SpectralWindow::from_nu(parse_interval(window_));
        const auto rep = abel_inner_matrix(radii_, lambdas_, w.I, sigmas_, ts_);
        CommandResult res;
        CsvTable matrix({"lambda", "r", "value"});
        for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
            for (std::size_t j = 0; j < rep.radii.size(); ++j)
                matrix.add_row(row(rep.lambdas[i], rep.radii[j], rep.values[i][j]));
        CsvTable env({"sigma", "t", "lambda_at", "delta_h", "envelope", "route_diff"});
        for (const auto& e : rep.envelope)
            env.add_row(row(e.sigma, e.t, e.lambda_at, e.delta_h, e.envelope, e.route_diff));
        res.results = {{"ratio_sup_over_lambda", rep.max_ratio},
                       {"ratio_per_lambda", rep.ratio},
                       {"constant", rep.constant},
                       {"I", interval_json(rep.I)}};
        res.check("bounded", rep.bounded);
        res.check("envelope", rep.envelope_holds);
        double route = 0.0;
        for (const auto& e : rep.envelope) route = std::max(route, e.route_diff);
        res.results["max_route_diff"] = route;
        res.check("delta_h_routes", route <= 1e-7);
        res.tables.emplace_back("matrix", std::move(matrix));
        res.tables.emplace_back("envelope", std::move(env));
        return res;
    }

private:
    std::vector<double> radii_{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    std::vector<double> lambdas_{0.5, 1.0, 2.0, 3.0};
    std::vector<double> sigmas_{0.4, 0.2, 0.1, 0.05};
    std::vector<double> ts_{3.0, 6.0};
    std::string window_ = "1:4";
};

class Orbit : public Command {
public:
    std::string name() const override { return "orbit"; }
    std::string description() const override { return "Bolza orbit ball against exhaustive words"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--R", radius_);
        sub.add_option("--oracle-length", length_);
    }
    json parameters() const override { return {{"R", radius_}, {"oracle_length", length_}}; }
    CommandResult run(const RunContext&) override {
        const auto rep = orbit_check(radius_, length_);
        const FuchsianGroup bolza = FuchsianGroup::bolza();
        const OrbitBall ball = orbit_enumerate(bolza, DiscPoint(0.0), radius_, length_);
        CommandResult res;
        CsvTable table({"word", "displacement"});
        for (const auto& e : ball.elements) table.add_row(row(word_string(e.word, bolza.rank()), e.displacement));
        res.results = {{"ball_count", rep.ball_count},
                       {"oracle_count", rep.oracle_count},
                       {"completeness_added", rep.completeness_added},
                       {"systole", rep.systole},
                       {"systole_oracle_upper", rep.systole_oracle},
                       {"cyclic_L", rep.cyclic_L},
                       {"cyclic_injrad", rep.cyclic_injrad}};
        res.check("oracle_count", rep.ball_count == rep.oracle_count);
        res.check("completeness", rep.completeness_added == 0);
        res.check("cyclic_injrad", rep.cyclic_error <= 1e-9);
        res.check("systole", std::abs(rep.systole - rep.systole_oracle) <= 1e-6);
        res.tables.emplace_back("ball", std::move(table));
        return res;
    }

private:
    double radius_ = 3.1;
    int length_ = 8;
};

class BsStat : public Command {
public:
    std::string name() const override { return "bs-stat"; }
    std::string description() const override { return "small injectivity radius fraction on random Bolza covers"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--degrees", degrees_)->delimiter(',');
        sub.add_option("--R", radius_);
        sub.add_option("--samples", samples_);
    }
    json parameters() const override { return {{"degrees", degrees_}, {"R", radius_}, {"samples", samples_}}; }
    CommandResult run(const RunContext& ctx) override {
        CommandResult res;
        CsvTable table({"degree", "surface", "estimate", "std_error", "exact"});
        json rows = json::array();
        std::vector<BsEstimate> est;
        for (int d : degrees_) {
            const CoverSurface c = bolza_cover(d, ctx.seed);
            const BsEstimate e = bs_statistic(c, radius_, samples_, ctx.seed);
            table.add_row(row(d, c.id(), e.value, e.std_error, e.exact ? 1 : 0));
            rows.push_back({{"degree", d}, {"surface", c.id()}, {"estimate", e.value}, {"std_error", e.std_error},
                            {"exact", e.exact}, {"reason", e.reason}});
            est.push_back(e);
        }
        for (std::size_t i = 0; i + 1 < est.size(); ++i) {
            const double band = 2.0 * std::hypot(est[i].std_error, est[i + 1].std_error);
            res.check("nonincreasing/" + std::to_string(degrees_[i]) + "->" + std::to_string(degrees_[i + 1]),
                      est[i + 1].value <= est[i].value + band);
        }
        // below half the systole the statistic must vanish exactly
        const double half_sys = 0.5 * systole(FuchsianGroup::bolza());
        const BsEstimate zero = bs_statistic(bolza_cover(1, ctx.seed), 0.99 * half_sys, samples_, ctx.seed);
        res.check("zero_below_half_systole", zero.exact && zero.value == 0.0);
        res.results["rows"] = rows;
        res.results["below_half_systole"] = {{"R", 0.99 * half_sys}, {"estimate", zero.value}, {"exact", zero.exact}};
        res.tables.emplace_back("bs", std::move(table));
        return res;
    }

private:
    std::vector<int> degrees_{2, 8, 32};
    double radius_ = 2.0;
    std::size_t samples_ = 2000;
};

class HsCheck : public Command {
public:
    std::string name() const override { return "hs-check"; }
    std::string description() const override { return "truncated periodisation HS inequality, 12 cases"; }
    void add_options(CLI::App& sub) override { sub.add_option("--samples", samples_); }
    json parameters() const override { return {{"samples", samples_}}; }
    CommandResult run(const RunContext& ctx) override {
        const auto rep = hs_bound_matrix(samples_, ctx.seed);
        CommandResult res;
        CsvTable table({"group", "kernel", "r", "lhs", "lhs_std_error", "first_term", "second_term",
                        "literal_second_term", "rhs", "small_injrad_volume", "pass"});
        json rows = json::array();
        for (const auto& c : rep.cases) {
            const auto& r = c.report;
            table.add_row(row(c.group, c.kernel, c.r, r.lhs.value, r.lhs.std_error, r.first_term, r.second_term,
                              r.literal_second_term, r.rhs, r.small_injrad_volume.value, r.pass ? 1 : 0));
            rows.push_back({{"group", c.group},
                            {"kernel", c.kernel},
                            {"r", c.r},
                            {"lhs", r.lhs.value},
                            {"rhs", r.rhs},
                            {"pass", r.pass},
                            {"pass_literal_form", r.pass_literal_form}});
            res.check("hs/" + c.group + "/" + c.kernel + "/r=" + format_double(c.r), r.pass);
        }
        res.results["cases"] = rows;
        res.tables.emplace_back("hs", std::move(table));
        return res;
    }

private:
    std::size_t samples_ = 2000;
};

class SymbolCmd : public Command {
public:
    std::string name() const override { return "symbol"; }
    std::string description() const override { return "complete symbol, condition (A1), locality and limit term of a preset"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--preset", preset_);
        sub.add_option("--lambda", lambdas_)->delimiter(',');
        sub.add_option("--points", points_);
        sub.add_option("--angles", angles_);
        sub.add_option("--mc", n_mc_);
    }
    json parameters() const override {
        return {{"preset", preset_}, {"lambda", lambdas_}, {"points", points_}, {"angles", angles_}, {"mc", n_mc_}};
    }
    CommandResult run(const RunContext& ctx) override {
        const auto presets = load_presets(ctx.presets_path);
        const Observable& A = find_preset(presets, preset_).observable;
        const Symbol a = symbol_of(A);
        Rng rng(ctx.seed);
        std::vector<DiscPoint> pts;
        for (int i = 0; i < points_; ++i) pts.push_back(sample_ball(DiscPoint(0.0), 1.0, rng));
        CommandResult res;
        CsvTable table({"x", "y", "lambda", "theta", "re", "im"});
        CsvTable a1tab({"x", "y", "lambda", "integral_re", "integral_im", "holds"});
        for (const auto& z : pts)
            for (double l : lambdas_) {
                for (int k = 0; k < angles_; ++k) {
                    const double theta = two_pi * k / angles_;
                    const cplx v = a.eval(z, l, boundary_direction(z, theta));
                    table.add_row(row(z.re(), z.im(), l, theta, v.real(), v.imag()));
                }
                const A1Check c = condition_a1(a, z, l);
                a1tab.add_row(row(z.re(), z.im(), l, c.integral.real(), c.integral.imag(), c.holds ? 1 : 0));
            }
        const LocalityReport loc = verify_locality(A, 20, ctx.seed);
        const SampleRegion region = SampleRegion::of_group(FuchsianGroup::bolza());
        json limits = json::array();
        for (double l : lambdas_) {
            const Estimate e = limit_term(A, l, region, n_mc_, ctx.seed);
            limits.push_back({{"lambda", l}, {"value", e.value}, {"std_error", e.std_error}});
        }
        res.results = {{"observable", A.name},
                       {"declared", {{"C", A.locality.C}, {"S", A.locality.S}, {"k", A.locality.k}}},
                       {"locality", {{"max_ratio", loc.max_ratio}, {"declared", loc.declared}, {"functions", loc.functions}}},
                       {"limit_term", limits}};
        res.check("locality", loc.pass);
        res.tables.emplace_back("symbol", std::move(table));
        res.tables.emplace_back("a1", std::move(a1tab));
        return res;
    }

private:
    std::string preset_ = "bolza_bump";
    std::vector<double> lambdas_{0.5, 1.0, 2.0};
    int points_ = 4;
    int angles_ = 8;
    std::size_t n_mc_ = 2000;
};

// Eigendata from a file or from the FEM solver on a Bolza cover.
struct SurfaceData {
    CoverSurface surface;
    EigenData data;
    std::string source;
};

SurfaceData surface_data(int degree, double h, Interval J, int n_modes, const std::string& eigendata,
                         const std::string& export_path, std::uint64_t seed) {
    SurfaceData s{bolza_cover(degree, seed), {}, ""};
    if (!eigendata.empty()) {
        s.data = ingest_eigendata(eigendata);
        s.source = "file";
    } else {
        const int modes = n_modes > 0 ? n_modes : suggested_mode_count(s.surface.volume(), J);
        s.data = fem_eigensolve(s.surface, h, modes);
        s.source = "fem";
    }
    if (!export_path.empty()) export_eigendata(s.data, export_path);
    return s;
}

class Variance : public Command {
public:
    std::string name() const override { return "variance"; }
    std::string description() const override { return "quantum variance of a preset on a Bolza cover, with the bound budget"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--degree", degree_);
        sub.add_option("--mesh-size", h_, "target mesh spacing");
        sub.add_option("--window", window_, "nu window a:b");
        sub.add_option("--preset", preset_);
        sub.add_option("--modes", n_modes_, "0 picks from the Weyl count");
        sub.add_option("--eigendata", eigendata_, "read eigendata instead of solving");
        sub.add_option("--export", export_, "write the eigendata used");
        sub.add_option("--T", T_);
        sub.add_option("--r", r_);
        sub.add_option("--s", s_);
        sub.add_option("--mc", n_mc_);
    }
    json parameters() const override {
        return {{"degree", degree_}, {"mesh_size", h_},         {"window", window_}, {"preset", preset_},
                {"modes", n_modes_}, {"eigendata", eigendata_}, {"export", export_}, {"T", T_},
                {"r", r_},           {"s", s_},         {"mc", n_mc_}};
    }
    CommandResult run(const RunContext& ctx) override {
        const SpectralWindow w = SpectralWindow::from_nu(parse_interval(window_));
        const auto presets = load_presets(ctx.presets_path);
        const Observable& A = find_preset(presets, preset_).observable;
        const SurfaceData sd = surface_data(degree_, h_, w.J, n_modes_, eigendata_, export_, ctx.seed);
        const double vol = sd.surface.volume();
        const SampleRegion region = SampleRegion::of_group(sd.surface.base);
        const VarianceReport rep = quantum_variance(A, sd.data, w, ctx.weight, ctx.seed, region, vol, n_mc_);

        PipelineConfig cfg;
        cfg.nevo_n = ctx.nevo_n;
        cfg.seed = ctx.seed;
        const PipelineInputs in = measure_pipeline_inputs(A, sd.surface, T_, r_, s_, w, ctx.weight, cfg);
        const PipelineBounds b = variance_pipeline_bounds(in, T_, r_, s_);

        CommandResult res;
        CsvTable table({"nu", "matrix_element", "limit_term", "term"});
        for (std::size_t i = 0; i < rep.terms.size(); ++i)
            table.add_row(row(rep.nu[i], rep.matrix_elements[i], rep.limit_terms[i], rep.terms[i]));
        int in_window = 0;
        for (Eigen::Index j = 0; j < sd.data.n_modes(); ++j) in_window += w.J.contains(sd.data.eigenvalues[j]) ? 1 : 0;
        res.results = {
            {"surface", sd.data.surface_id},
            {"eigendata_source", sd.source},
            {"window", {{"J", interval_json(w.J)}, {"I", interval_json(w.I)}, {"I_prime", interval_json(w.I_prime)}}},
            {"count", rep.count},
            {"variance", rep.variance},
            {"std_error", rep.std_error},
            {"limit_error", rep.limit_error},
            {"volume", vol},
            {"sum_over_unit_tangent_volume", rep.sum_over_volume},
            {"nu0", sd.data.eigenvalues[0]},
            {"budget",
             {{"inputs",
               {{"theta_norm", in.theta_norm},
                {"kernel_sup", in.kernel_sup},
                {"locality_S", in.locality_S},
                {"systole", in.systole},
                {"bs_fraction", in.bs_fraction},
                {"kernel_rho_l2sq", in.kernel_rho_l2sq},
                {"nevo_n", in.nevo_n}}},
              {"T", b.T},
              {"r", b.r},
              {"s", b.s},
              {"S_T", b.S_T},
              {"C_rho", b.C_rho},
              {"C_rho_prime", b.C_rho_prime},
              {"time_term", b.time_term},
              {"geometric_term", b.geometric_term},
              {"propagation_term", b.propagation_term},
              {"truncation_term", b.truncation_term},
              {"mean_term", b.mean_term},
              {"total", b.total},
              {"dominant", b.dominant},
              {"nevo_factor", "1 - 1/n"}}}};
        res.check("variance_nonnegative", rep.variance >= 0.0);
        res.check("count_matches", rep.count == in_window);
        res.check("budget_finite", std::isfinite(b.total));
        res.tables.emplace_back("terms", std::move(table));
        return res;
    }

private:
    int degree_ = 1;
    double h_ = 0.05;
    std::string window_ = "1:4";
    std::string preset_ = "bolza_bump";
    int n_modes_ = 0;
    std::string eigendata_, export_;
    double T_ = 2.0, r_ = 4.0, s_ = 0.0;
    std::size_t n_mc_ = 20000;
};

class Weyl : public Command {
public:
    std::string name() const override { return "weyl"; }
    std::string description() const override { return "eigenvalue count in a window against the Weyl prediction"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--degree", degree_);
        sub.add_option("--mesh-size", h_, "target mesh spacing");
        sub.add_option("--window", window_, "nu window a:b");
        sub.add_option("--modes", n_modes_, "0 picks from the Weyl count");
        sub.add_option("--eigendata", eigendata_);
    }
    json parameters() const override {
        return {{"degree", degree_}, {"mesh_size", h_}, {"window", window_}, {"modes", n_modes_}, {"eigendata", eigendata_}};
    }
    CommandResult run(const RunContext& ctx) override {
        const Interval J = parse_interval(window_);
        const SurfaceData sd = surface_data(degree_, h_, J, n_modes_, eigendata_, "", ctx.seed);
        const double vol = sd.surface.volume();
        const WeylReport rep = weyl_ratio(sd.data, J, vol);
        CommandResult res;
        CsvTable table({"nu", "count_below", "weyl_count_below"});
        for (Eigen::Index j = 0; j < sd.data.n_modes(); ++j) {
            const double nu = sd.data.eigenvalues[j];
            table.add_row(row(nu, static_cast<int>(j + 1), vol * weyl_predicted({0.25, std::max(nu, 0.25)})));
        }
        // nesting J inside a wider window can only raise the prediction
        const double wider = weyl_predicted({std::max(0.25, J.lo - 0.5), J.hi + 0.5});
        res.results = {{"surface", sd.data.surface_id},
                       {"count", rep.count},
                       {"volume", vol},
                       {"measured", rep.measured},
                       {"predicted", rep.predicted},
                       {"ratio", rep.ratio()},
                       {"predicted_wider", wider}};
        res.check("ratio_in_band", rep.ratio() >= 0.5 && rep.ratio() <= 2.0);
        res.check("prediction_monotone", wider >= rep.predicted);
        res.tables.emplace_back("counts", std::move(table));
        return res;
    }

private:
    int degree_ = 4;
    double h_ = 0.05;
    std::string window_ = "1:4";
    int n_modes_ = 0;
    std::string eigendata_;
};

class Tower : public Command {
public:
    std::string name() const override { return "tower"; }
    std::string description() const override { return "quantum variance across Bolza covers of growing degree"; }
    void add_options(CLI::App& sub) override {
        sub.add_option("--degrees", degrees_)->delimiter(',');
        sub.add_option("--mesh-size", h_, "target mesh spacing");
        sub.add_option("--window", window_, "nu window a:b");
        sub.add_option("--bump-radius", radius_);
    }
    json parameters() const override {
        return {{"degrees", degrees_}, {"mesh_size", h_}, {"window", window_}, {"bump_radius", radius_}};
    }
    CommandResult run(const RunContext& ctx) override {
        TowerOptions opt;
        opt.degrees = degrees_;
        opt.h = h_;
        opt.J = parse_interval(window_);
        opt.bump_radius = radius_;
        opt.seed = ctx.seed;
        const TowerReport rep = run_tower(opt);
        CommandResult res;
        CsvTable table({"degree", "surface", "n_modes", "nu0", "count", "variance_h", "variance_2h", "std_error",
                        "error_bar", "weyl_ratio"});
        json levels = json::array();
        for (const auto& l : rep.levels) {
            table.add_row(row(l.degree, l.surface_id, l.n_modes, l.nu0, l.fine.count, l.fine.variance,
                              l.coarse.variance, l.fine.std_error, l.error_bar, l.weyl.ratio()));
            levels.push_back({{"degree", l.degree},
                              {"surface", l.surface_id},
                              {"count", l.fine.count},
                              {"variance", l.fine.variance},
                              {"variance_2h", l.coarse.variance},
                              {"error_bar", l.error_bar},
                              {"weyl_ratio", l.weyl.ratio()}});
        }
        res.results = {{"levels", levels}, {"nonincreasing", rep.nonincreasing}, {"weyl_ratio", rep.weyl_ratio}};
        res.check("nonincreasing_within_error", rep.nonincreasing);
        res.check("weyl_ratio_in_band", rep.weyl_pass);
        res.tables.emplace_back("tower", std::move(table));
        return res;
    }

private:
    std::vector<int> degrees_{1, 2, 4};
    double h_ = 0.05;
    std::string window_ = "1:4";
    double radius_ = 1.4;
};

}  // namespace

std::vector<std::unique_ptr<Command>> make_commands() {
    std::vector<std::unique_ptr<Command>> out;
    out.push_back(std::make_unique<Toy1d>());
    out.push_back(std::make_unique<GeometryCheck>());
    out.push_back(std::make_unique<Spherical>());
    out.push_back(std::make_unique<Selberg>());
    out.push_back(std::make_unique<KernelDecay>());
    out.push_back(std::make_unique<Positivity>());
    out.push_back(std::make_unique<AbelInner>());
    out.push_back(std::make_unique<Orbit>());
    out.push_back(std::make_unique<BsStat>());
    out.push_back(std::make_unique<HsCheck>());
    out.push_back(std::make_unique<SymbolCmd>());
    out.push_back(std::make_unique<Variance>());
    out.push_back(std::make_unique<Weyl>());
    out.push_back(std::make_unique<Tower>());
    return out;
}

}  // namespace hqe::cli
