#include "hqe/geometry.hpp"

#include <cmath>

namespace hqe {

namespace {

double one_minus_abs2(cplx z) {
    const double r = std::abs(z);
    return (1.0 - r) * (1.0 + r);
}

}  // namespace

DiscPoint::DiscPoint(cplx z) : z_(z) {
    if (!(std::abs(z) < 1.0 - 1e-12)) throw DomainError("DiscPoint: |z| must stay below 1 - 1e-12");
}

double DiscPoint::one_minus_r2() const { return one_minus_abs2(z_); }

BoundaryPoint::BoundaryPoint(double angle) {
    double a = std::fmod(angle, two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    angle_ = a;
}

GroupElement::GroupElement(cplx alpha, cplx beta) {
    const double det = std::norm(alpha) - std::norm(beta);
    if (!(det > 0)) throw DomainError("GroupElement: |alpha|^2 - |beta|^2 must be positive");
    const double scale = 1.0 / std::sqrt(det);
    alpha *= scale;
    beta *= scale;
    if (alpha.real() < 0 || (alpha.real() == 0 && alpha.imag() < 0)) {
        alpha = -alpha;
        beta = -beta;
    }
    alpha_ = alpha;
    beta_ = beta;
}

GroupElement GroupElement::from_sl2r(double a, double b, double c, double d) {
    return GroupElement(cplx(0.5 * (a + d), 0.5 * (b - c)), cplx(0.5 * (a - d), -0.5 * (b + c)));
}

std::array<double, 4> GroupElement::to_sl2r() const {
    return {alpha_.real() + beta_.real(), alpha_.imag() - beta_.imag(), -alpha_.imag() - beta_.imag(),
            alpha_.real() - beta_.real()};
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return GroupElement(alpha_ * o.alpha_ + beta_ * std::conj(o.beta_), alpha_ * o.beta_ + beta_ * std::conj(o.alpha_));
}

double GroupElement::translation_length() const {
    const double ht = half_trace();
    return ht > 1.0 ? 2.0 * std::acosh(ht) : 0.0;
}

bool GroupElement::approx_equal(const GroupElement& o, double tol) const {
    auto close = [&](double sign) {
        return std::abs(alpha_ - sign * o.alpha_) <= tol && std::abs(beta_ - sign * o.beta_) <= tol;
    };
    return close(1.0) || close(-1.0);
}

DiscPoint mobius_apply(const GroupElement& g, const DiscPoint& z) { return DiscPoint(g.apply(z.z())); }

BoundaryPoint mobius_apply(const GroupElement& g, const BoundaryPoint& b) {
    return BoundaryPoint::from_complex(g.apply(b.z()));
}

double boundary_derivative(const GroupElement& g, const BoundaryPoint& b) {
    return 1.0 / std::norm(std::conj(g.beta()) * b.z() + std::conj(g.alpha()));
}

double hyp_distance(const DiscPoint& z, const DiscPoint& w) {
    const double num = std::abs(z.z() - w.z());
    return 2.0 * std::asinh(num / std::sqrt(z.one_minus_r2() * w.one_minus_r2()));
}

double hyp_norm(const DiscPoint& z) { return 2.0 * std::atanh(std::abs(z.z())); }

double busemann(const DiscPoint& z, const BoundaryPoint& b) {
    return std::log(z.one_minus_r2() / std::norm(z.z() - b.z()));
}

double poisson_weight(const DiscPoint& z, const BoundaryPoint& b) {
    return z.one_minus_r2() / std::norm(z.z() - b.z());
}

GroupElement a_flow(double s) { return GroupElement(cplx(std::cosh(0.5 * s), 0.0), cplx(std::sinh(0.5 * s), 0.0)); }

GroupElement n_flow(double u) { return GroupElement(cplx(1.0, 0.5 * u), cplx(0.0, -0.5 * u)); }

GroupElement k_rotation(double theta) { return GroupElement(std::polar(1.0, 0.5 * theta), 0.0); }

AnkCoords ank_decompose(const GroupElement& g) {
    const auto m = g.to_sl2r();
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    // g . i in the half plane
    const double den = c * c + d * d;
    const double x = (a * c + b * d) / den;
    const double y = 1.0 / den;
    AnkCoords out;
    out.s = std::log(y);
    out.u = x / y;
    // k = (a_s n_u)^{-1} m;  (a_s n_u)^{-1} = [[e^{-s/2}, -u e^{s/2}], [0, e^{s/2}]]
    const double em = std::exp(-0.5 * out.s), ep = std::exp(0.5 * out.s);
    const double k11 = em * a - out.u * ep * c;
    const double k21 = ep * c;
    double theta = 2.0 * std::atan2(-k21, k11);
    theta = std::fmod(theta, two_pi);
    if (theta < 0) theta += two_pi;
    if (theta >= two_pi) theta = 0.0;
    out.theta = theta;
    return out;
}

GroupElement ank_compose(const AnkCoords& c) { return a_flow(c.s) * n_flow(c.u) * k_rotation(c.theta); }

GroupElement flow(const GroupElement& g, FlowKind which, double param) {
    switch (which) {
        case FlowKind::geodesic: return g * a_flow(param);
        case FlowKind::horocycle: return g * n_flow(param);
        case FlowKind::rotation: return g * k_rotation(param);
    }
    return g;
}

GroupElement translation_to(const DiscPoint& z) {
    const double s = 1.0 / std::sqrt(z.one_minus_r2());
    return GroupElement(cplx(s, 0.0), z.z() * s);
}

DiscPoint polar_point(const DiscPoint& center, double rho, double alpha) {
    const cplx local = std::polar(std::tanh(0.5 * rho), alpha);
    return DiscPoint(translation_to(center).apply(local));
}

UnitTangent to_unit_tangent(const GroupElement& g) {
    return {DiscPoint(g.apply(0.0)), mobius_apply(g, BoundaryPoint(0.0))};
}

GroupElement from_unit_tangent(const UnitTangent& v) {
    const GroupElement tz = translation_to(v.base);
    const double phi = std::arg(tz.inverse().apply(v.dir.z()));
    return tz * k_rotation(phi);
}

DiscPoint cayley(cplx w) {
    if (!(w.imag() > 0)) throw DomainError("cayley: point must lie in the upper half plane");
    return DiscPoint((w - cplx(0, 1)) / (w + cplx(0, 1)));
}

cplx cayley_inverse(const DiscPoint& z) { return cplx(0, 1) * (1.0 + z.z()) / (1.0 - z.z()); }

double half_plane_distance(cplx z, cplx w) {
    return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

}  // namespace hqe
