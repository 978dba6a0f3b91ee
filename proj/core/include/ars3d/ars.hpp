#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ars3d/fields.hpp"

namespace ars3d {

/// Two-dimensional subspace of the Lie algebra together with a basis that is
/// declared orthonormal; the basis defines the inner product on the subspace.
class Distribution {
public:
    /// Throws ValidationError if the basis is dependent or spans the nilradical.
    Distribution(const AlgebraElement& b1, const AlgebraElement& b2);

    /// Orthonormalizes (u1, u2) with respect to the Gram matrix [[g11, g12], [g12, g22]].
    static Distribution from_gram(const AlgebraElement& u1, const AlgebraElement& u2, double g11, double g12,
                                  double g22);

    const AlgebraElement& b1() const { return b1_; }
    const AlgebraElement& b2() const { return b2_; }

    /// Unit normal of the subspace in (alpha, eta) coordinates.
    Eigen::Vector3d normal() const;

private:
    AlgebraElement b1_;
    AlgebraElement b2_;
};

Eigen::Vector3d to_vector(const AlgebraElement& x);
AlgebraElement to_algebra(const Eigen::Vector3d& x);

/// (0, x.alpha theta y.eta - y.alpha theta x.eta).
AlgebraElement bracket(const ThetaForm& theta, const AlgebraElement& x, const AlgebraElement& y);

bool is_subalgebra(const ThetaForm& theta, const Distribution& delta);

/// Not a subalgebra, or a subalgebra that D does not preserve.
bool larc(const ThetaForm& theta, const Distribution& delta, const LinearField& X);

/// Unit generator of delta intersected with the nilradical, first nonzero coordinate positive.
Vec2 nilradical_line(const Distribution& delta);

/// Outcome of every defining check, without throwing.
struct ArsChecks {
    bool admissible = false;
    bool larc = false;
    bool nonempty_complement = false;
    bool rank_two = false;
    std::vector<std::string> reasons;

    bool valid() const { return admissible && larc && nonempty_complement; }
};

/// F(t, v) = det[A v + Lambda_t xi | rho_t eta_star]; zero exactly on the singular locus.
double locus_F(const LinearField& X, const Vec2& eta_star, const GroupPoint& p);

/// max |F| over 64 seeded points exceeds 1e-12. F is analytic, so sampling is
/// a probabilistic certificate that F does not vanish identically.
bool nonempty_complement(const LinearField& X, const Vec2& eta_star);

ArsChecks check(const LinearField& X, const Distribution& delta);

/// Almost-Riemannian structure {X, Delta^L}. Instances satisfy LARC and have
/// nonempty regular set. A non-admissible field can only enter through
/// LinearField::unchecked.
class Ars {
public:
    static Ars create(const LinearField& X, const Distribution& delta);

    const ThetaForm& theta() const { return X_.theta(); }
    const LinearField& X() const { return X_; }
    const Distribution& delta() const { return delta_; }
    const Vec2& eta_star() const { return eta_star_; }

    /// Same structure with the orthonormal basis multiplied by `factor`
    /// (the inner product on the distribution is divided by factor^2).
    Ars rescaled(double factor) const;

private:
    Ars(const LinearField& X, const Distribution& delta, const Vec2& eta_star)
        : X_(X), delta_(delta), eta_star_(eta_star) {}

    LinearField X_;
    Distribution delta_;
    Vec2 eta_star_;
};

struct Frame {
    Tangent x;
    Tangent y1;
    Tangent y2;
};

Frame frame_at(const Ars& sigma, const GroupPoint& p);

/// Columns X(p), Y1(p), Y2(p) in (t, v) coordinates.
Mat3 frame_matrix(const Ars& sigma, const GroupPoint& p);

Eigen::Vector3d to_vector(const Tangent& z);

/// Minimal Euclidean norm of the frame coefficients representing Z, or +inf
/// when Z is outside the span of the frame.
double ar_norm(const Ars& sigma, const GroupPoint& p, const Tangent& z);
double ar_norm(const Ars& sigma, const GroupPoint& p, const Eigen::Vector3d& z);

double locus_F(const Ars& sigma, const GroupPoint& p);

struct Window {
    double v1_min = -2.0;
    double v1_max = 2.0;
    double v2_min = -2.0;
    double v2_max = 2.0;
};

using Polyline = std::vector<Vec2>;

/// Marching-squares zero set of v -> F(t, v) on a resolution x resolution grid.
/// Throws std::invalid_argument on an empty window or resolution < 2.
std::vector<Polyline> locus_slice(const Ars& sigma, double t, const Window& window, int resolution);

struct ExponentialCurve {
    AlgebraElement gen;
};
struct FlowCurve {};
using Curve = std::variant<ExponentialCurve, FlowCurve>;

GroupPoint curve_point(const Ars& sigma, const Curve& curve, const GroupPoint& p0, double s);

struct Crossings {
    bool contained = false;
    std::vector<double> roots;
};

/// Sign scan of s -> F(curve(s)) at 512 samples on [lo, hi] followed by bisection.
/// Contained when |F| < 1e-11 (1 + ||p||) at every sample. Throws
/// TooManyCrossingsError when more than max_roots roots are found.
Crossings crossings(const Ars& sigma, const Curve& curve, const GroupPoint& p0, double lo, double hi,
                    std::size_t max_roots = 32);

}  // namespace ars3d
