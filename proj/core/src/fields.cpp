#include "ars3d/fields.hpp"

#include "ars3d/errors.hpp"

namespace ars3d {

LinearField::LinearField(const ThetaForm& theta, const Vec2& xi, const Mat2& A)
    : LinearField(unchecked(theta, xi, A)) {
    if (!admissible_) throw ValidationError("linear field matrix A does not commute with theta");
}

LinearField LinearField::unchecked(const ThetaForm& theta, const Vec2& xi, const Mat2& A) {
    LinearField X;
    X.theta_ = theta;
    X.theta_mat_ = theta_matrix(theta);
    X.xi_ = xi;
    X.A_ = A;
    X.admissible_ = commutes(A, X.theta_mat_);
    return X;
}

Tangent eval_linear(const LinearField& X, const GroupPoint& p) {
    return {p, 0.0, X.A() * p.v + lambda_op(X.theta_mat(), p.t) * X.xi()};
}

GroupPoint flow(const LinearField& X, double s, const GroupPoint& p) {
    const Vec2 shift = lambda_op(X.theta_mat(), p.t) * (lambda_op(X.A(), s) * X.xi());
    return {p.t, expm2(X.A(), s) * p.v + shift};
}

Mat3 derivation_of(const LinearField& X) {
    Mat3 D = Mat3::Zero();
    D(1, 0) = X.xi().x;
    D(2, 0) = X.xi().y;
    D(1, 1) = X.A().a;
    D(1, 2) = X.A().b;
    D(2, 1) = X.A().c;
    D(2, 2) = X.A().d;
    return D;
}

bool rank_two(const LinearField& X) {
    // Singular values of [A | xi] from the 2x2 Gram matrix G = A A^T + xi xi^T.
    const Mat2& A = X.A();
    const Vec2& xi = X.xi();
    const double g11 = A.a * A.a + A.b * A.b + xi.x * xi.x;
    const double g12 = A.a * A.c + A.b * A.d + xi.x * xi.y;
    const double g22 = A.c * A.c + A.d * A.d + xi.y * xi.y;
    const double half_tr = 0.5 * (g11 + g22);
    const double h = 0.5 * (g11 - g22);
    const double lmax = half_tr + std::hypot(h, g12);
    if (lmax <= 0.0) return false;
    // det G as the sum of squared 2x2 minors of [A | xi] (Cauchy-Binet).
    const double m1 = A.det();
    const double m2 = A.a * xi.y - A.c * xi.x;
    const double m3 = A.b * xi.y - A.d * xi.x;
    const double lmin = (m1 * m1 + m2 * m2 + m3 * m3) / lmax;
    const double smax = std::sqrt(lmax);
    const double smin = std::sqrt(lmin);
    return smin > 1e-9 * (smax + 1.0);
}

GroupPoint flow_invariant(const ThetaForm& theta, const InvariantField& Y, double s, const GroupPoint& p) {
    return mul(theta, p, exp_g(theta, Y.gen * s));
}

}  // namespace ars3d
