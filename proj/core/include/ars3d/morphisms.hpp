#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ars3d/ars.hpp"
#include "ars3d/sampling.hpp"

namespace ars3d {

/// phi(t, v) = (eps t, P v + eps Lambda^theta_{eps t} eta), with P theta = eps theta P.
struct Automorphism {
    int eps = 1;
    Mat2 P = Mat2::identity();
    Vec2 eta{};

    static Automorphism identity() { return {}; }
};

/// Throws ValidationError unless m satisfies the automorphism invariants for theta.
void validate(const ThetaForm& theta, const Automorphism& m);

/// a o b.
Automorphism compose(const Automorphism& a, const Automorphism& b);
Automorphism inverse(const Automorphism& m);

/// Differential at the identity, [[eps, 0], [eta, P]].
Mat3 differential_at_identity(const Automorphism& m);

struct LeftTranslation {
    GroupPoint g;
};

/// (t, v) -> (a t, P v); need not be an automorphism.
struct LinearCandidate {
    double a = 1.0;
    Mat2 P = Mat2::identity();
};

class GroupMap;

/// maps[0] o maps[1] o ... (the last map is applied first).
struct Composite {
    std::vector<GroupMap> maps;
};

class GroupMap {
public:
    using Variant = std::variant<Automorphism, LeftTranslation, LinearCandidate, Composite>;

    GroupMap(Automorphism m) : v_(std::move(m)) {}
    GroupMap(LeftTranslation m) : v_(std::move(m)) {}
    GroupMap(LinearCandidate m) : v_(std::move(m)) {}
    GroupMap(Composite m) : v_(std::move(m)) {}

    const Variant& variant() const { return v_; }

private:
    Variant v_;
};

GroupPoint apply(const ThetaForm& theta, const GroupMap& m, const GroupPoint& p);
Mat3 jacobian(const ThetaForm& theta, const GroupMap& m, const GroupPoint& p);

/// Automorphism agreeing with m, if m is one (checked through its
/// differential at the identity and on 32 seeded sample points).
std::optional<Automorphism> as_automorphism(const ThetaForm& theta, const GroupMap& m, double tol);
bool is_automorphism(const ThetaForm& theta, const GroupMap& m, double tol);

/// Sigma_psi: the structure for which psi is an isometry onto sigma.
Ars pullback(const Ars& sigma, const Automorphism& m);

struct SamplerConfig {
    std::size_t points = 1000;
    std::uint64_t seed = kDefaultSeed;
    double box = 2.0;
    std::size_t tangents_per_point = 8;
    std::size_t locus_points = 64;
    double tol = 1e-8;
};

struct FlowConjugation {
    int sign = 1;
    double residual = 0.0;
    double other_residual = 0.0;
};

/// Sup over sampled (s, p) of |m(phi1_s(p)) - phi2_{+-s}(m(p))| / (1 + |.|) for
/// both signs; the smaller one is reported. Throws NotConjugatingError when
/// both exceed cfg.tol.
FlowConjugation verify_flow_conjugation(const GroupMap& m, const Ars& sigma1, const Ars& sigma2,
                                        const SamplerConfig& cfg = {});

struct IsometryWitness {
    GroupPoint p;
    Eigen::Vector3d z;
    double norm_source = 0.0;
    double norm_image = 0.0;
    bool on_locus = false;
};

struct IsometryReport {
    bool passed = false;
    double max_rel_error = 0.0;
    std::size_t samples_checked = 0;
    std::size_t locus_points = 0;
    double locus_image_residual = 0.0;
    std::optional<IsometryWitness> witness;
};

/// Compares ||Z||_{sigma1, p} with ||dm Z||_{sigma2, m(p)} at seeded samples,
/// including points of the singular locus of sigma1 located by bisection.
/// The error is |n2 - n1| / max(1, n1); an infinite norm must map to an
/// infinite norm.
IsometryReport verify_isometry(const GroupMap& m, const Ars& sigma1, const Ars& sigma2,
                               const SamplerConfig& cfg = {});

/// Up to 'count' points with |F| ~ 0 found by bisection along seeded segments.
std::vector<GroupPoint> sample_locus_points(const Ars& sigma, std::size_t count, std::uint64_t seed, double box);

struct Decomposition {
    GroupPoint g;
    GroupMap m0;
    double fixes_identity_residual = 0.0;
    double locus_value = 0.0;  // F2(g); zero when m is an isometry
};

/// m = L_g o m0 with m0 fixing the identity.
Decomposition decompose(const GroupMap& m, const Ars& sigma2);

}  // namespace ars3d
