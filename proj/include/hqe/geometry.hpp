#pragma once

#include <array>

#include "hqe/core.hpp"

namespace hqe {

// Point of the open unit disc.  Construction refuses points within 1e-12 of
// the boundary circle.
class DiscPoint {
public:
    DiscPoint() = default;
    DiscPoint(cplx z);  // NOLINT: implicit on purpose
    DiscPoint(double re, double im) : DiscPoint(cplx(re, im)) {}

    cplx z() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    // 1 - |z|^2 without cancellation for |z| near 1
    double one_minus_r2() const;

private:
    cplx z_{0.0, 0.0};
};

class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(double angle);
    static BoundaryPoint from_complex(cplx b) { return BoundaryPoint(std::arg(b)); }

    double angle() const { return angle_; }
    cplx z() const { return std::polar(1.0, angle_); }

private:
    double angle_ = 0.0;
};

// PSU(1,1) element [[alpha, beta], [conj(beta), conj(alpha)]], stored with
// |alpha|^2 - |beta|^2 = 1 and canonical sign (Re alpha > 0, or Re alpha = 0
// and Im alpha > 0).
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(cplx alpha, cplx beta);

    static GroupElement identity() { return {}; }
    // half-plane SL(2,R) matrix conjugated through the Cayley map
    static GroupElement from_sl2r(double a, double b, double c, double d);
    std::array<double, 4> to_sl2r() const;

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const { return GroupElement(std::conj(alpha_), -beta_); }

    cplx apply(cplx z) const { return (alpha_ * z + beta_) / (std::conj(beta_) * z + std::conj(alpha_)); }
    // |Tr| / 2 on the SU(1,1) representative; > 1 for hyperbolic elements
    double half_trace() const { return std::abs(alpha_.real()); }
    double translation_length() const;

    // Projective comparison with entrywise tolerance.
    bool approx_equal(const GroupElement& o, double tol = 1e-9) const;

private:
    cplx alpha_{1.0, 0.0};
    cplx beta_{0.0, 0.0};
};

struct AnkCoords {
    double s = 0.0;
    double u = 0.0;
    double theta = 0.0;  // in [0, 2pi)
};

struct UnitTangent {
    DiscPoint base;
    BoundaryPoint dir;  // forward endpoint of the geodesic ray
};

enum class FlowKind { geodesic, horocycle, rotation };

DiscPoint mobius_apply(const GroupElement& g, const DiscPoint& z);
BoundaryPoint mobius_apply(const GroupElement& g, const BoundaryPoint& b);
// |d(g b)/db| for the angle parametrisation of the circle
double boundary_derivative(const GroupElement& g, const BoundaryPoint& b);

double hyp_distance(const DiscPoint& z, const DiscPoint& w);
double hyp_norm(const DiscPoint& z);  // distance to the origin
double busemann(const DiscPoint& z, const BoundaryPoint& b);
double poisson_weight(const DiscPoint& z, const BoundaryPoint& b);

// Half-plane subgroups carried to the disc.
GroupElement a_flow(double s);
GroupElement n_flow(double u);
GroupElement k_rotation(double theta);

AnkCoords ank_decompose(const GroupElement& g);
GroupElement ank_compose(const AnkCoords& c);
GroupElement flow(const GroupElement& g, FlowKind which, double param);

// Isometry taking 0 to z with positive real derivative at 0.
GroupElement translation_to(const DiscPoint& z);
// Point at distance rho from z in the direction of angle alpha in the frame
// translated from the origin.
DiscPoint polar_point(const DiscPoint& center, double rho, double alpha);

UnitTangent to_unit_tangent(const GroupElement& g);
GroupElement from_unit_tangent(const UnitTangent& v);

DiscPoint cayley(cplx half_plane_point);
cplx cayley_inverse(const DiscPoint& z);
double half_plane_distance(cplx z, cplx w);

}  // namespace hqe
