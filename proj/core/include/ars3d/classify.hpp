#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ars3d/morphisms.hpp"

namespace ars3d {

/// Index i of the canonical basis {(1, 0), (sigma, e_i)} with e_3 = e_1 + e_2.
enum class CanonicalClass : int { One = 1, Two = 2, Three = 3 };

Vec2 class_direction(CanonicalClass cls);

std::set<CanonicalClass> class_partition(const ThetaForm& theta);

struct Normalized {
    Ars sigma;               // contains (1, 0) in its distribution
    Automorphism psi_hat;    // isometry from the input onto `sigma`
};

/// Moves (1, 0) into the distribution with psi_hat(t, v) = (t, v - Lambda_t w)
/// where (1, w) is the element of the distribution with w orthogonal to its
/// nilradical line.
Normalized normalize_e0(const Ars& sigma);

struct Complement {
    double sigma = 0.0;
    Vec2 eta{};
    double scale = 1.0;  // factor applied to the basis so that (1, 0) is a unit vector
};

/// Unit vector (sigma, eta) orthogonal to (1, 0) after rescaling the metric so
/// that (1, 0) has norm one; sigma > 0, or eta's first nonzero coordinate is
/// positive when sigma = 0. Throws ValidationError when (1, 0) is not in the
/// distribution.
Complement orthonormal_complement(const Ars& sigma);

/// {X, Delta} with (1, 0), (sigma, e_cls) declared orthonormal. Throws
/// ValidationError when cls is not a class of theta or LARC fails.
Ars canonical_ars(const ThetaForm& theta, CanonicalClass cls, const LinearField& X, double sigma);

struct ClassifyOptions {
    SamplerConfig verify{200, kDefaultSeed, 2.0, 8, 32, 1e-8};
};

struct ClassificationResult {
    CanonicalClass cls = CanonicalClass::One;
    double sigma = 0.0;
    bool euclidean = false;
    double scale = 1.0;
    Automorphism normalizer;  // isometry from `canonical` onto the (rescaled) input
    Ars canonical;
    Vec2 eta{};               // complement direction before normalization
    double isometry_residual = 0.0;
    double nilradical_norm = 0.0;  // ||(0, e_cls)|| at the identity of `canonical`
    std::string norm_match;  // "sqrt(1+sigma^2)", "1+sigma^2", "both" or "neither"
    std::vector<std::string> warnings;
};

/// Throws RankError when the linear field is not rank two.
ClassificationResult classify(const Ars& sigma, const ClassifyOptions& options = {});

/// Whether an automorphism can carry the nilradical line of class `from` onto
/// that of class `to`, i.e. P e_from in R e_to with P theta = eps theta P and
/// det P != 0. Returns a witness P when feasible.
std::optional<Automorphism> automorphism_fit(const ThetaForm& theta, CanonicalClass from, CanonicalClass to);

}  // namespace ars3d
