#pragma once

#include "ars3d/linalg2.hpp"

namespace ars3d {

/// Element (t, v) of G(theta) = R x_rho R^2.
struct GroupPoint {
    double t = 0.0;
    Vec2 v{};

    static constexpr GroupPoint identity() { return {}; }
    constexpr bool operator==(const GroupPoint&) const = default;
};

/// Element (alpha, eta) of the Lie algebra; the nilradical is {alpha = 0}.
struct AlgebraElement {
    double alpha = 0.0;
    Vec2 eta{};

    constexpr AlgebraElement operator+(const AlgebraElement& o) const { return {alpha + o.alpha, eta + o.eta}; }
    constexpr AlgebraElement operator-(const AlgebraElement& o) const { return {alpha - o.alpha, eta - o.eta}; }
    constexpr AlgebraElement operator*(double s) const { return {alpha * s, eta * s}; }
    constexpr bool operator==(const AlgebraElement&) const = default;
    double norm() const { return std::sqrt(alpha * alpha + eta.dot(eta)); }
};

/// Tangent vector (dt, dv) at a base point.
struct Tangent {
    GroupPoint base{};
    double dt = 0.0;
    Vec2 dv{};

    double norm() const { return std::sqrt(dt * dt + dv.dot(dv)); }
};

/// Euclidean distance in (t, v) coordinates; used for residuals.
double distance(const GroupPoint& g, const GroupPoint& h);
double coord_norm(const GroupPoint& g);

/// rho_t = e^{t theta}.
Mat2 rho(const ThetaForm& theta, double t);

GroupPoint mul(const ThetaForm& theta, const GroupPoint& g, const GroupPoint& h);
GroupPoint inv(const ThetaForm& theta, const GroupPoint& g);
GroupPoint exp_g(const ThetaForm& theta, const AlgebraElement& x);

/// Left-invariant extension of x evaluated at g: (alpha, rho_t eta) based at g.
Tangent dL(const ThetaForm& theta, const GroupPoint& g, const AlgebraElement& x);

/// Differential of L_g applied to a tangent at any base point.
Tangent dL(const ThetaForm& theta, const GroupPoint& g, const Tangent& w);

}  // namespace ars3d
