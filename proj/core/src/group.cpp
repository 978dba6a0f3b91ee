#include "ars3d/group.hpp"

namespace ars3d {

double distance(const GroupPoint& g, const GroupPoint& h) {
    const double dt = g.t - h.t;
    const Vec2 dv = g.v - h.v;
    return std::sqrt(dt * dt + dv.dot(dv));
}

double coord_norm(const GroupPoint& g) { return std::sqrt(g.t * g.t + g.v.dot(g.v)); }

Mat2 rho(const ThetaForm& theta, double t) { return expm2(theta_matrix(theta), t); }

GroupPoint mul(const ThetaForm& theta, const GroupPoint& g, const GroupPoint& h) {
    return {g.t + h.t, g.v + rho(theta, g.t) * h.v};
}

GroupPoint inv(const ThetaForm& theta, const GroupPoint& g) {
    return {-g.t, -(rho(theta, -g.t) * g.v)};
}

GroupPoint exp_g(const ThetaForm& theta, const AlgebraElement& x) {
    if (x.alpha == 0.0) return {0.0, x.eta};
    const Mat2 lam = lambda_op(theta_matrix(theta), x.alpha);
    return {x.alpha, (lam * x.eta) / x.alpha};
}

Tangent dL(const ThetaForm& theta, const GroupPoint& g, const AlgebraElement& x) {
    return {g, x.alpha, rho(theta, g.t) * x.eta};
}

Tangent dL(const ThetaForm& theta, const GroupPoint& g, const Tangent& w) {
    return {mul(theta, g, w.base), w.dt, rho(theta, g.t) * w.dv};
}

}  // namespace ars3d
