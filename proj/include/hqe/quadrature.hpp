#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hqe/core.hpp"

namespace hqe {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule. Tables are built once under a lock and never
// mutated afterwards.
const GaussRule& gauss_legendre(int n);

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
};

template <class F>
auto gl_fixed(F&& f, double a, double b, int n) -> decltype(f(a)) {
    using T = decltype(f(a));
    const GaussRule& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    T sum{};
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

// Panels between sorted cut points, each further split so no panel is
// longer than max_len.
std::vector<double> panel_edges(std::vector<double> cuts, double max_len);

template <class F>
auto gl_composite(F&& f, const std::vector<double>& edges, int n) -> decltype(f(0.0)) {
    using T = decltype(f(0.0));
    T sum{};
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        if (edges[k + 1] > edges[k]) sum += gl_fixed(f, edges[k], edges[k + 1], n);
    return sum;
}

struct QuadOptions {
    int order = 16;
    double max_panel = 0.5;
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_refine = 4;
};

// Composite Gauss-Legendre with convergence judged by halving every panel.
// The integrand may have kinks only at the supplied cut points.
template <class F>
auto integrate(F&& f, std::vector<double> cuts, const QuadOptions& opt = {},
               const char* what = "integral") -> QuadResult<decltype(f(0.0))> {
    using T = decltype(f(0.0));
    double len = opt.max_panel;
    T prev = gl_composite(f, panel_edges(cuts, len), opt.order);
    for (int level = 0; level < opt.max_refine; ++level) {
        len *= 0.5;
        T cur = gl_composite(f, panel_edges(cuts, len), opt.order);
        const double diff = std::abs(cur - prev);
        if (diff <= std::max(opt.rel_tol * std::abs(cur), opt.abs_tol)) return {cur, diff};
        prev = cur;
    }
    throw QuadratureNotConverged(std::string(what) + ": panel refinement did not settle");
}

// (1/2pi) * integral over [0, 2pi) by the n-point periodic trapezoid rule.
template <class F>
auto periodic_mean(F&& f, int n) -> decltype(f(0.0)) {
    using T = decltype(f(0.0));
    T sum{};
    for (int k = 0; k < n; ++k) sum += f(two_pi * k / n);
    return sum / static_cast<double>(n);
}

// Double-exponential (tanh-sinh) rule on [a, b] with level doubling.  The
// integrand receives (x, x - a, b - x) so endpoint distances are available
// without cancellation.  Suited to endpoint singularities and to integrands
// with a sharp peak at an endpoint.
template <class F>
auto de_integrate(F&& f, double a, double b, double tol, int max_level = 12,
                  const char* what = "integral") -> QuadResult<decltype(f(0.0, 0.0, 0.0))> {
    using T = decltype(f(0.0, 0.0, 0.0));
    constexpr double u_max = 4.5;
    const double len = b - a;
    auto node = [&](double u) -> T {
        const double q = std::exp(-pi * std::sinh(std::abs(u)));
        const double w = 0.5 * len * (0.5 * pi) * std::cosh(u) * 4.0 * q / ((1.0 + q) * (1.0 + q));
        if (w == 0.0) return T{};
        double da, db;
        if (u < 0) {
            da = len * q / (1.0 + q);
            db = len / (1.0 + q);
        } else {
            da = len / (1.0 + q);
            db = len * q / (1.0 + q);
        }
        return w * f(a + da, da, db);
    };
    // Convergence is judged relative to the integral of |f| so that
    // integrals with cancellation still terminate.
    double h = 0.5;
    T sum{};
    double mass = 0.0;
    auto add = [&](double u) {
        const T v = node(u);
        sum += v;
        mass += std::abs(v);
    };
    add(0.0);
    for (int j = 1; j * h <= u_max; ++j) add(j * h), add(-j * h);
    T est = h * sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (int j = 1; j * h <= u_max; j += 2) add(j * h), add(-j * h);
        const T next = h * sum;
        const double diff = std::abs(next - est);
        est = next;
        if (level >= 3 && diff <= tol * h * mass) return {next, diff};
    }
    throw QuadratureNotConverged(std::string(what) + ": double-exponential levels did not settle");
}

}  // namespace hqe

namespace hqe {

// Vector-valued variant of integrate(): f returns an Eigen array of fixed
// size and convergence is judged on the largest entrywise change.
template <class F>
QuadResult<Eigen::ArrayXd> integrate_array(F&& f, Eigen::Index size, std::vector<double> cuts,
                                           const QuadOptions& opt = {}, const char* what = "integral") {
    auto sweep = [&](double len) {
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(size);
        const auto edges = panel_edges(cuts, len);
        const GaussRule& rule = gauss_legendre(opt.order);
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const double a = edges[k], b = edges[k + 1];
            if (!(b > a)) continue;
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (int i = 0; i < opt.order; ++i) acc += (rule.weights[i] * half) * f(mid + half * rule.nodes[i]);
        }
        return acc;
    };
    double len = opt.max_panel;
    Eigen::ArrayXd prev = sweep(len);
    for (int level = 0; level < opt.max_refine; ++level) {
        len *= 0.5;
        Eigen::ArrayXd cur = sweep(len);
        const double diff = (cur - prev).abs().maxCoeff();
        const double scale = cur.abs().maxCoeff();
        if (diff <= std::max(opt.rel_tol * scale, opt.abs_tol)) return {cur, diff};
        prev = std::move(cur);
    }
    throw QuadratureNotConverged(std::string(what) + ": panel refinement did not settle");
}

}  // namespace hqe
