#include "ars3d/classify.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "ars3d/errors.hpp"

namespace ars3d {

Vec2 class_direction(CanonicalClass cls) {
    switch (cls) {
        case CanonicalClass::One: return {1.0, 0.0};
        case CanonicalClass::Two: return {0.0, 1.0};
        case CanonicalClass::Three: return {1.0, 1.0};
    }
    throw std::logic_error("unreachable canonical class");
}

std::set<CanonicalClass> class_partition(const ThetaForm& theta) {
    validate(theta);
    using enum CanonicalClass;
    switch (theta.family) {
        case ThetaFamily::Rotation: return {One};
        case ThetaFamily::Jordan: return {One, Three};
        case ThetaFamily::Diagonal:
            if (theta.gamma == 1.0) return {One};
            if (theta.gamma == -1.0) return {One, Three};
            return {One, Two, Three};
    }
    throw std::logic_error("unreachable theta family");
}

Normalized normalize_e0(const Ars& sigma) {
    const Distribution& delta = sigma.delta();
    const AlgebraElement& pick =
        std::abs(delta.b1().alpha) >= std::abs(delta.b2().alpha) ? delta.b1() : delta.b2();
    if (pick.alpha == 0.0) throw ValidationError("distribution equals nilradical");
    const Vec2 w0 = pick.eta / pick.alpha;
    const Vec2 line = sigma.eta_star();
    const Vec2 w = w0 - line * w0.dot(line);
    const Automorphism psi_hat{1, Mat2::identity(), -w};
    return {pullback(sigma, inverse(psi_hat)), psi_hat};
}

Complement orthonormal_complement(const Ars& sigma) {
    Eigen::Matrix<double, 3, 2> B;
    B.col(0) = to_vector(sigma.delta().b1());
    B.col(1) = to_vector(sigma.delta().b2());
    const Eigen::Vector3d e0{1.0, 0.0, 0.0};
    const Eigen::Vector2d ab = B.colPivHouseholderQr().solve(e0);
    if ((B * ab - e0).norm() > 1e-9) throw ValidationError("(1, 0) is not in the distribution");
    const double a = ab(0), b = ab(1);
    const double r = std::hypot(a, b);
    Eigen::Vector3d u = -b * B.col(0) + a * B.col(1);
    if (u(0) < 0.0 || (u(0) == 0.0 && (u(1) < 0.0 || (u(1) == 0.0 && u(2) < 0.0)))) u = -u;
    return {u(0), {u(1), u(2)}, r};
}

Ars canonical_ars(const ThetaForm& theta, CanonicalClass cls, const LinearField& X, double sigma) {
    if (!class_partition(theta).contains(cls)) {
        throw ValidationError("class " + std::to_string(static_cast<int>(cls)) + " is not a canonical class for theta");
    }
    if (!rank_two(X)) throw RankError("canonical structures require a rank two linear field");
    if (!(X.theta() == theta)) throw ValidationError("linear field belongs to a different theta");
    return Ars::create(X, Distribution({1.0, {}}, {sigma, class_direction(cls)}));
}

namespace {

struct CaseChoice {
    CanonicalClass cls;
    int eps;
    Mat2 P;
};

CaseChoice dispatch(const ThetaForm& theta, const Vec2& eta, std::vector<std::string>& warnings) {
    const double scale = eta.norm();
    const double x = eta.x, y = eta.y;
    const bool x_zero = std::abs(x) < 1e-10 * scale;
    const bool y_zero = std::abs(y) < 1e-10 * scale;
    for (const double c : {x, y}) {
        const double rel = std::abs(c) / scale;
        if (rel >= 1e-10 && rel < 1e-6) {
            warnings.emplace_back("complement component within 1e-6 of a branch boundary; class may be unstable");
        }
    }
    using enum CanonicalClass;
    switch (theta.family) {
        case ThetaFamily::Rotation:
            return {One, 1, Mat2{x, -y, y, x}};
        case ThetaFamily::Jordan:
            if (y_zero) return {One, 1, Mat2::diag(x, x)};
            return {Three, 1, Mat2{y, x - y, 0.0, y}};
        case ThetaFamily::Diagonal:
            if (theta.gamma == 1.0) return {One, 1, Mat2{x, -y, y, x}};
            if (y_zero) return {One, 1, Mat2::diag(x, x)};
            if (theta.gamma == -1.0) {
                // P e_1 = -eta keeps the pulled-back basis equal to -alpha_1, which
                // carries the same inner product as alpha_1.
                if (x_zero) return {One, -1, Mat2{0.0, -y, -y, 0.0}};
                return {Three, 1, Mat2::diag(x, y)};
            }
            if (x_zero) return {Two, 1, Mat2::diag(y, y)};
            return {Three, 1, Mat2::diag(x, y)};
    }
    throw std::logic_error("unreachable theta family");
}

}  // namespace

ClassificationResult classify(const Ars& sigma, const ClassifyOptions& options) {
    if (!rank_two(sigma.X())) throw RankError("linear field is not rank two: Im A + R xi != R^2");
    if (!sigma.X().admissible()) throw ValidationError("linear field matrix A does not commute with theta");
    const ThetaForm& theta = sigma.theta();

    const Normalized normalized = normalize_e0(sigma);
    const Complement comp = orthonormal_complement(normalized.sigma);

    std::vector<std::string> warnings;
    const CaseChoice choice = dispatch(theta, comp.eta, warnings);
    const Automorphism phi{choice.eps, choice.P, {}};
    const Automorphism normalizer = compose(inverse(normalized.psi_hat), phi);

    const Ars target = sigma.rescaled(comp.scale);
    const Ars pulled = pullback(target, normalizer);
    const Ars canonical = canonical_ars(theta, choice.cls, pulled.X(), comp.sigma);

    const IsometryReport report = verify_isometry(normalizer, canonical, target, options.verify);

    const double nil_norm = ar_norm(canonical, GroupPoint::identity(),
                                    Tangent{GroupPoint::identity(), 0.0, class_direction(choice.cls)});
    const double s2 = comp.sigma * comp.sigma;
    const bool match_sqrt = std::abs(nil_norm - std::sqrt(1.0 + s2)) < 1e-9;
    const bool match_lin = std::abs(nil_norm - (1.0 + s2)) < 1e-9;
    std::string match = match_sqrt && match_lin ? "both" : match_sqrt ? "sqrt(1+sigma^2)" : match_lin ? "1+sigma^2" : "neither";

    if (!report.passed) warnings.emplace_back("normalizer failed the sampled isometry check");

    return ClassificationResult{choice.cls,
                                comp.sigma,
                                comp.sigma < 1e-10,
                                comp.scale,
                                normalizer,
                                canonical,
                                comp.eta,
                                report.max_rel_error,
                                nil_norm,
                                std::move(match),
                                std::move(warnings)};
}

std::optional<Automorphism> automorphism_fit(const ThetaForm& theta, CanonicalClass from, CanonicalClass to) {
    const Mat2 th = theta_matrix(theta);
    const Vec2 ef = class_direction(from);
    const Vec2 et = class_direction(to);
    Sampler sampler(kDefaultSeed);
    for (const int eps : {1, -1}) {
        if (eps == -1 && std::abs(th.trace()) > default_tolerance()) continue;
        const std::vector<Mat2> basis = twisted_commutant_basis(th, eps);
        if (basis.empty()) continue;
        const auto k = static_cast<Eigen::Index>(basis.size());
        // Linear constraint det[P e_from | e_to] = 0 on the coefficients.
        Eigen::RowVectorXd row(k);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = cross(basis[static_cast<std::size_t>(j)] * ef, et);
        Eigen::MatrixXd feasible;
        if (row.norm() < 1e-12) {
            feasible = Eigen::MatrixXd::Identity(k, k);
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(row), Eigen::ComputeFullV);
            feasible = svd.matrixV().rightCols(k - 1);
        }
        for (int trial = 0; trial < 16 && feasible.cols() > 0; ++trial) {
            Eigen::VectorXd c(feasible.cols());
            for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = sampler.uniform(-1.0, 1.0);
            const Eigen::VectorXd coeff = feasible * c;
            Mat2 P = Mat2::zero();
            for (Eigen::Index j = 0; j < k; ++j) P = P + basis[static_cast<std::size_t>(j)] * coeff(j);
            if (std::abs(P.det()) > 1e-9 * std::max(1e-300, P.frobenius() * P.frobenius())) {
                return Automorphism{eps, P, {}};
            }
        }
    }
    return std::nullopt;
}

}  // namespace ars3d
