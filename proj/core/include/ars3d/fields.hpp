#pragma once

#include <Eigen/Core>

#include "ars3d/group.hpp"

namespace ars3d {

using Mat3 = Eigen::Matrix3d;

/// Linear vector field X(t, v) = (0, A v + Lambda^theta_t xi).
///
/// The regular constructor enforces A theta = theta A (relative tolerance
/// default_tolerance()) and throws ValidationError otherwise. `unchecked`
/// keeps a non-commuting pair, so that formulas can still be evaluated on
/// data that is not a derivation; `admissible()` reports which case holds.
class LinearField {
public:
    LinearField(const ThetaForm& theta, const Vec2& xi, const Mat2& A);
    static LinearField unchecked(const ThetaForm& theta, const Vec2& xi, const Mat2& A);

    const ThetaForm& theta() const { return theta_; }
    const Mat2& theta_mat() const { return theta_mat_; }
    const Vec2& xi() const { return xi_; }
    const Mat2& A() const { return A_; }
    bool admissible() const { return admissible_; }

private:
    LinearField() = default;

    ThetaForm theta_{};
    Mat2 theta_mat_{};
    Vec2 xi_{};
    Mat2 A_{};
    bool admissible_ = false;
};

/// Left-invariant field Y^L(t, v) = (alpha, rho_t eta).
struct InvariantField {
    AlgebraElement gen{};
};

Tangent eval_linear(const LinearField& X, const GroupPoint& p);

/// phi_s(t, v) = (t, e^{sA} v + Lambda^theta_t Lambda^A_s xi).
GroupPoint flow(const LinearField& X, double s, const GroupPoint& p);

/// Block matrix [[0, 0], [xi, A]] acting on (alpha, eta).
Mat3 derivation_of(const LinearField& X);

/// Im A + R xi = R^2, decided by the second singular value of [A | xi]
/// exceeding 1e-9 (sigma_max + 1).
bool rank_two(const LinearField& X);

/// p exp(s gen).
GroupPoint flow_invariant(const ThetaForm& theta, const InvariantField& Y, double s, const GroupPoint& p);

}  // namespace ars3d
