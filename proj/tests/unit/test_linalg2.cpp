#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ars3d/linalg2.hpp"
#include "ars3d/sampling.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ars3d;

namespace {

constexpr double e = std::numbers::e;

void expect_mat_near(const Mat2& X, const Mat2& Y, double tol) {
    EXPECT_LE((X - Y).max_abs(), tol) << "got [[" << X.a << ", " << X.b << "], [" << X.c << ", " << X.d
                                      << "]] want [[" << Y.a << ", " << Y.b << "], [" << Y.c << ", " << Y.d << "]]";
}

/// Matrices hitting every spectral branch, including near-coalescent ones.
Mat2 random_matrix(Sampler& s, int kind) {
    switch (kind % 4) {
        case 0: return gen::mat(s, 2.0);
        case 1: {  // repeated eigenvalue with a Jordan block
            const double l = s.uniform(-2, 2);
            return Mat2{l, s.uniform(-2, 2), 0.0, l};
        }
        case 2: {  // complex pair
            const double a = s.uniform(-1, 1), w = s.uniform(0.1, 2);
            return Mat2{a, -w, w, a};
        }
        default: {  // discriminant just above the branch threshold
            const double l = s.uniform(-1, 1), gap = std::pow(10.0, s.uniform(-7, -3));
            return Mat2{l + gap, 1.0, 0.0, l - gap};
        }
    }
}

}  // namespace

TEST(ThetaMatrix, Families) {
    expect_mat_near(theta_matrix(ThetaForm::diagonal(0.0)), Mat2{1, 0, 0, 0}, 0);
    expect_mat_near(theta_matrix(ThetaForm::diagonal(1.0)), Mat2::identity(), 0);
    expect_mat_near(theta_matrix(ThetaForm::rotation(0.0)), Mat2{0, -1, 1, 0}, 0);
    expect_mat_near(theta_matrix(ThetaForm::jordan()), Mat2{1, 1, 0, 1}, 0);
    expect_mat_near(theta_matrix(ThetaForm::rotation(0.7)), Mat2{0.7, -1, 1, 0.7}, 0);
}

TEST(ThetaMatrix, RejectsGammaOutOfRange) {
    EXPECT_THROW(ThetaForm::diagonal(1.5), std::invalid_argument);
    EXPECT_THROW(ThetaForm::diagonal(std::nan("")), std::invalid_argument);
    EXPECT_THROW(family_from_string("hyperbolic"), std::invalid_argument);
}

TEST(Expm2, Examples) {
    expect_mat_near(expm2(Mat2{0, 1, 0, 0}, 1.0), Mat2{1, 1, 0, 1}, 1e-15);
    expect_mat_near(expm2(Mat2{0, -1, 1, 0}, std::numbers::pi / 2), Mat2{0, -1, 1, 0}, 1e-15);
    const Mat2 D = expm2(Mat2::diag(1, 0), 1.0);
    expect_mat_near(D, Mat2::diag(e, 1), 1e-15);
    EXPECT_LE(oracle::rel_error(D, oracle::expm(Mat2::diag(1, 0), 1.0)), 1e-12);
}

TEST(Expm2, Branches) {
    EXPECT_EQ(spectral_branch(Mat2::diag(1, 0)), SpectralBranch::DistinctReal);
    EXPECT_EQ(spectral_branch(Mat2{0, -1, 1, 0}), SpectralBranch::ComplexPair);
    EXPECT_EQ(spectral_branch(Mat2{1, 1, 0, 1}), SpectralBranch::Repeated);
    EXPECT_EQ(spectral_branch(Mat2{1 + 1e-9, 0, 0, 1}), SpectralBranch::Repeated);
}

TEST(Expm2, MatchesScalingAndSquaring) {
    Sampler s(11);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Mat2 A = random_matrix(s, i);
        const double t = s.uniform(-2, 2);
        worst = std::max(worst, oracle::rel_error(expm2(A, t), oracle::expm(A, t)));
    }
    EXPECT_LT(worst, 1e-11);
}

TEST(Expm2, OneParameterGroup) {
    Sampler s(12);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 A = random_matrix(s, i);
        const double a = s.uniform(-1, 1), b = s.uniform(-1, 1);
        expect_mat_near(expm2(A, a + b), expm2(A, a) * expm2(A, b), 1e-10 * std::max(1.0, expm2(A, a + b).max_abs()));
    }
}

TEST(LambdaOp, Examples) {
    expect_mat_near(lambda_op(Mat2::zero(), 3.0), Mat2::diag(3, 3), 1e-15);
    expect_mat_near(lambda_op(Mat2::diag(1, 0), 1.0), Mat2::diag(e - 1, 1), 1e-15);
    const Mat2 J{1, 1, 0, 1};
    expect_mat_near(lambda_op(J, 1.0), Mat2{e - 1, 1, 0, e - 1}, 1e-14);
    EXPECT_LE(oracle::rel_error(lambda_op(J, 1.0), oracle::lambda(J, 1.0)), 1e-10);
}

TEST(LambdaOp, MatchesQuadrature) {
    Sampler s(13);
    double worst = 0;
    for (int i = 0; i < 400; ++i) {
        const Mat2 A = random_matrix(s, i);
        const double t = s.uniform(-2, 2);
        worst = std::max(worst, oracle::rel_error(lambda_op(A, t), oracle::lambda(A, t)));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(LambdaOp, ExponentialIdentity) {
    Sampler s(14);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 A = random_matrix(s, i);
        const double t = s.uniform(-2, 2);
        const Mat2 lhs = expm2(A, t) - Mat2::identity();
        const double tol = 1e-10 * std::max(1.0, lhs.max_abs());
        expect_mat_near(lhs, lambda_op(A, t) * A, tol);
        expect_mat_near(lhs, A * lambda_op(A, t), tol);
    }
}

TEST(LambdaOp, Cocycle) {
    Sampler s(15);
    for (const ThetaForm& f : gen::families()) {
        const Mat2 th = theta_matrix(f);
        for (int i = 0; i < 200; ++i) {
            const double t = s.uniform(-2, 2), u = s.uniform(-2, 2);
            const Mat2 lhs = lambda_op(th, t + u);
            expect_mat_near(lhs, lambda_op(th, t) + expm2(th, t) * lambda_op(th, u),
                            1e-10 * std::max(1.0, lhs.max_abs()));
        }
    }
}

TEST(LambdaOp, TinyAndZeroTime) {
    expect_mat_near(lambda_op(Mat2{3, 1, -2, 5}, 0.0), Mat2::zero(), 0);
    const Mat2 A{0.3, -1.2, 0.8, 0.1};
    const Mat2 L = lambda_op(A, 1e-9);
    expect_mat_near(L, Mat2::identity() * 1e-9, 1e-17);
}

TEST(Commutes, Examples) {
    const Mat2 jordan = theta_matrix(ThetaForm::jordan());
    EXPECT_TRUE(commutes(jordan, Mat2{2.5, -1.0, 0.0, 2.5}, 1e-12));
    const Mat2 A{1.2, -3.4, 0.5, 7.0};
    EXPECT_TRUE(commutes(A, A, 1e-12));
    EXPECT_FALSE(commutes(Mat2::diag(1, 0), Mat2{0, 1, 0, 0}, 1e-9));
}

TEST(CommutantBasis, SizesAndMembership) {
    EXPECT_EQ(commutant_basis(ThetaForm::jordan()).size(), 2U);
    EXPECT_EQ(commutant_basis(ThetaForm::diagonal(1.0)).size(), 4U);
    EXPECT_EQ(commutant_basis(ThetaForm::diagonal(0.0)).size(), 2U);
    EXPECT_EQ(commutant_basis(ThetaForm::rotation(2.0)).size(), 2U);
    for (const ThetaForm& f : gen::families()) {
        for (const Mat2& B : commutant_basis(f)) {
            EXPECT_TRUE(commutes(B, theta_matrix(f), 1e-12));
        }
    }
}

TEST(TwistedCommutant, AntiCommutingSolutions) {
    const Mat2 th = theta_matrix(ThetaForm::diagonal(-1.0));
    const auto basis = twisted_commutant_basis(th, -1);
    ASSERT_EQ(basis.size(), 2U);
    for (const Mat2& P : basis) EXPECT_LE((P * th + th * P).max_abs(), 1e-12);
    EXPECT_TRUE(twisted_commutant_basis(theta_matrix(ThetaForm::diagonal(0.3)), -1).empty());
    EXPECT_EQ(twisted_commutant_basis(theta_matrix(ThetaForm::jordan()), 1).size(), 2U);
}

TEST(Tolerance, GlobalOverride) {
    const double saved = default_tolerance();
    set_default_tolerance(1e-3);
    EXPECT_TRUE(commutes(Mat2::diag(1, 0), Mat2{1, 1e-5, 0, 1}));
    set_default_tolerance(saved);
    EXPECT_FALSE(commutes(Mat2::diag(1, 0), Mat2{1, 1e-5, 0, 1}));
    EXPECT_THROW(set_default_tolerance(-1.0), std::invalid_argument);
}
