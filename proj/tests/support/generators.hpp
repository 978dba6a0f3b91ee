#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ars3d/classify.hpp"
#include "ars3d/errors.hpp"

namespace ars3d::gen {

inline std::vector<ThetaForm> families() {
    return {ThetaForm::jordan(), ThetaForm::diagonal(1.0), ThetaForm::diagonal(-1.0), ThetaForm::diagonal(0.3),
            ThetaForm::rotation(0.7)};
}

inline Vec2 vec(Sampler& s, double r = 1.0) { return {s.uniform(-r, r), s.uniform(-r, r)}; }

inline AlgebraElement element(Sampler& s, double r = 1.0) { return {s.uniform(-r, r), vec(s, r)}; }

inline Mat2 mat(Sampler& s, double r = 1.0) {
    return {s.uniform(-r, r), s.uniform(-r, r), s.uniform(-r, r), s.uniform(-r, r)};
}

inline Mat2 commuting(const ThetaForm& theta, Sampler& s, double r = 1.0) {
    Mat2 A = Mat2::zero();
    for (const Mat2& B : commutant_basis(theta)) A = A + B * s.uniform(-r, r);
    return A;
}

inline LinearField field(const ThetaForm& theta, Sampler& s, bool require_rank_two = true) {
    for (;;) {
        LinearField X(theta, vec(s), commuting(theta, s));
        if (!require_rank_two || rank_two(X)) return X;
    }
}

/// Random structure on theta; retries until LARC and the regular-set test hold.
inline Ars ars(const ThetaForm& theta, Sampler& s, bool require_rank_two = true) {
    for (;;) {
        const LinearField X = field(theta, s, require_rank_two);
        try {
            return Ars::create(X, Distribution(element(s), element(s)));
        } catch (const ValidationError&) {
        }
    }
}

/// Structure with orthonormal basis {(1, 0), (sigma, eta)}.
inline Ars with_complement(const LinearField& X, double sigma, const Vec2& eta) {
    return Ars::create(X, Distribution({1.0, {}}, {sigma, eta}));
}

inline Automorphism automorphism(const ThetaForm& theta, Sampler& s) {
    const Mat2 th = theta_matrix(theta);
    const bool can_flip = std::abs(th.trace()) < 1e-12;
    for (;;) {
        const int eps = can_flip && s.unit() < 0.5 ? -1 : 1;
        Mat2 P = Mat2::zero();
        for (const Mat2& B : twisted_commutant_basis(th, eps)) P = P + B * s.uniform(-1.5, 1.5);
        if (std::abs(P.det()) > 0.05) return {eps, P, vec(s)};
    }
}

}  // namespace ars3d::gen
