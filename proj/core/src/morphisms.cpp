#include "ars3d/morphisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ars3d/errors.hpp"

namespace ars3d {

namespace {

Mat2 twisted_defect(const Mat2& P, const Mat2& theta, int eps) { return P * theta - theta * P * eps; }

}  // namespace

void validate(const ThetaForm& theta, const Automorphism& m) {
    if (m.eps != 1 && m.eps != -1) throw ValidationError("automorphism sign must be +1 or -1");
    const Mat2 th = theta_matrix(theta);
    const double tol = default_tolerance();
    if (twisted_defect(m.P, th, m.eps).max_abs() > tol * (1.0 + m.P.frobenius() * th.frobenius())) {
        throw ValidationError("automorphism matrix violates P theta = eps theta P");
    }
    if (m.eps == -1 && std::abs(th.trace()) > tol) {
        throw ValidationError("eps = -1 requires a traceless theta");
    }
    if (std::abs(m.P.det()) <= 1e-12 * std::max(1.0, m.P.frobenius() * m.P.frobenius())) {
        throw ValidationError("automorphism matrix is singular");
    }
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    return {a.eps * b.eps, a.P * b.P, a.eta * b.eps + a.P * b.eta};
}

Automorphism inverse(const Automorphism& m) {
    const Mat2 Pinv = m.P.inverse();
    return {m.eps, Pinv, -(Pinv * m.eta) * m.eps};
}

Mat3 differential_at_identity(const Automorphism& m) {
    Mat3 J = Mat3::Zero();
    J(0, 0) = m.eps;
    J(1, 0) = m.eta.x;
    J(2, 0) = m.eta.y;
    J(1, 1) = m.P.a;
    J(1, 2) = m.P.b;
    J(2, 1) = m.P.c;
    J(2, 2) = m.P.d;
    return J;
}

GroupPoint apply(const ThetaForm& theta, const GroupMap& m, const GroupPoint& p) {
    return std::visit(
        [&](const auto& map) -> GroupPoint {
            using T = std::decay_t<decltype(map)>;
            if constexpr (std::is_same_v<T, Automorphism>) {
                const double et = map.eps * p.t;
                return {et, map.P * p.v + (lambda_op(theta_matrix(theta), et) * map.eta) * map.eps};
            } else if constexpr (std::is_same_v<T, LeftTranslation>) {
                return mul(theta, map.g, p);
            } else if constexpr (std::is_same_v<T, LinearCandidate>) {
                return {map.a * p.t, map.P * p.v};
            } else {
                GroupPoint q = p;
                for (auto it = map.maps.rbegin(); it != map.maps.rend(); ++it) q = apply(theta, *it, q);
                return q;
            }
        },
        m.variant());
}

Mat3 jacobian(const ThetaForm& theta, const GroupMap& m, const GroupPoint& p) {
    return std::visit(
        [&](const auto& map) -> Mat3 {
            using T = std::decay_t<decltype(map)>;
            Mat3 J = Mat3::Zero();
            if constexpr (std::is_same_v<T, Automorphism>) {
                J = differential_at_identity(map);
                const Vec2 col = rho(theta, map.eps * p.t) * map.eta;
                J(1, 0) = col.x;
                J(2, 0) = col.y;
            } else if constexpr (std::is_same_v<T, LeftTranslation>) {
                const Mat2 r = rho(theta, map.g.t);
                J(0, 0) = 1.0;
                J(1, 1) = r.a;
                J(1, 2) = r.b;
                J(2, 1) = r.c;
                J(2, 2) = r.d;
            } else if constexpr (std::is_same_v<T, LinearCandidate>) {
                J(0, 0) = map.a;
                J(1, 1) = map.P.a;
                J(1, 2) = map.P.b;
                J(2, 1) = map.P.c;
                J(2, 2) = map.P.d;
            } else {
                J = Mat3::Identity();
                GroupPoint q = p;
                for (auto it = map.maps.rbegin(); it != map.maps.rend(); ++it) {
                    J = jacobian(theta, *it, q) * J;
                    q = apply(theta, *it, q);
                }
            }
            return J;
        },
        m.variant());
}

std::optional<Automorphism> as_automorphism(const ThetaForm& theta, const GroupMap& m, double tol) {
    if (const auto* aut = std::get_if<Automorphism>(&m.variant())) {
        try {
            validate(theta, *aut);
        } catch (const ValidationError&) {
            return std::nullopt;
        }
        return *aut;
    }
    if (coord_norm(apply(theta, m, GroupPoint::identity())) > tol) return std::nullopt;
    const Mat3 J = jacobian(theta, m, GroupPoint::identity());
    const int eps = J(0, 0) >= 0.0 ? 1 : -1;
    if (std::abs(J(0, 0) - eps) > tol || std::abs(J(0, 1)) > tol || std::abs(J(0, 2)) > tol) return std::nullopt;
    const Automorphism candidate{eps, Mat2{J(1, 1), J(1, 2), J(2, 1), J(2, 2)}, Vec2{J(1, 0), J(2, 0)}};
    try {
        validate(theta, candidate);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
    Sampler sampler(kDefaultSeed);
    for (int i = 0; i < 32; ++i) {
        const GroupPoint p = sampler.point(2.0);
        const GroupPoint a = apply(theta, m, p);
        const GroupPoint b = apply(theta, candidate, p);
        if (distance(a, b) > tol * (1.0 + coord_norm(a))) return std::nullopt;
    }
    return candidate;
}

bool is_automorphism(const ThetaForm& theta, const GroupMap& m, double tol) {
    return as_automorphism(theta, m, tol).has_value();
}

Ars pullback(const Ars& sigma, const Automorphism& m) {
    validate(sigma.theta(), m);
    const LinearField& X = sigma.X();
    const Mat2 Pinv = m.P.inverse();
    const Vec2 xi = Pinv * (X.xi() * m.eps + X.A() * m.eta);
    const Mat2 A = Pinv * X.A() * m.P;
    const LinearField Xp =
        X.admissible() ? LinearField(sigma.theta(), xi, A) : LinearField::unchecked(sigma.theta(), xi, A);
    // (d psi)_0^{-1} (alpha, w) = (eps alpha, P^{-1} (w - eps alpha eta)).
    auto pull = [&](const AlgebraElement& b) {
        return AlgebraElement{m.eps * b.alpha, Pinv * (b.eta - m.eta * (m.eps * b.alpha))};
    };
    return Ars::create(Xp, Distribution(pull(sigma.delta().b1()), pull(sigma.delta().b2())));
}

FlowConjugation verify_flow_conjugation(const GroupMap& m, const Ars& sigma1, const Ars& sigma2,
                                        const SamplerConfig& cfg) {
    const ThetaForm& theta = sigma1.theta();
    Sampler sampler(cfg.seed);
    double plus = 0.0, minus = 0.0;
    for (std::size_t i = 0; i < cfg.points; ++i) {
        const double s = sampler.uniform(-cfg.box, cfg.box);
        const GroupPoint p = sampler.point(cfg.box);
        const GroupPoint lhs = apply(theta, m, flow(sigma1.X(), s, p));
        const GroupPoint q = apply(theta, m, p);
        const double scale = 1.0 + coord_norm(lhs);
        plus = std::max(plus, distance(lhs, flow(sigma2.X(), s, q)) / scale);
        minus = std::max(minus, distance(lhs, flow(sigma2.X(), -s, q)) / scale);
    }
    if (plus > cfg.tol && minus > cfg.tol) {
        throw NotConjugatingError("map conjugates neither phi_s nor phi_{-s}", plus, minus);
    }
    return plus <= minus ? FlowConjugation{1, plus, minus} : FlowConjugation{-1, minus, plus};
}

std::vector<GroupPoint> sample_locus_points(const Ars& sigma, std::size_t count, std::uint64_t seed, double box) {
    Sampler sampler(seed);
    std::vector<GroupPoint> found;
    constexpr int kScan = 32;
    for (std::size_t attempt = 0; found.size() < count && attempt < 50 * count; ++attempt) {
        const GroupPoint start = sampler.point(box);
        const Vec2 dir = sampler.disk(1.0);
        if (dir.norm() < 1e-3) continue;
        const Vec2 step = dir * (2.0 * box / dir.norm() / kScan);
        auto at = [&](double k) { return GroupPoint{start.t, start.v - step * (kScan / 2.0) + step * k}; };
        double fprev = locus_F(sigma, at(0));
        for (int k = 1; k <= kScan; ++k) {
            const double fk = locus_F(sigma, at(k));
            if (fprev != 0.0 && fk != 0.0 && (fprev > 0.0) != (fk > 0.0)) {
                double a = k - 1, b = k, fa = fprev;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (a + b);
                    const double fm = locus_F(sigma, at(mid));
                    if (fm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if ((fm > 0.0) == (fa > 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                const GroupPoint a_pt = at(a), b_pt = at(b);
                found.push_back(std::abs(locus_F(sigma, a_pt)) <= std::abs(locus_F(sigma, b_pt)) ? a_pt : b_pt);
                break;
            }
            fprev = fk;
        }
    }
    return found;
}

namespace {

struct Tracker {
    IsometryReport report;

    void add(const GroupPoint& p, const Eigen::Vector3d& z, double n1, double n2, bool on_locus) {
        ++report.samples_checked;
        double err = 0.0;
        if (std::isinf(n1) != std::isinf(n2)) {
            err = std::numeric_limits<double>::infinity();
        } else if (!std::isinf(n1)) {
            err = std::abs(n2 - n1) / std::max(1.0, n1);
        }
        if (!report.witness || err > report.max_rel_error) {
            report.max_rel_error = std::max(report.max_rel_error, err);
            report.witness = IsometryWitness{p, z, n1, n2, on_locus};
        }
    }
};

}  // namespace

IsometryReport verify_isometry(const GroupMap& m, const Ars& sigma1, const Ars& sigma2, const SamplerConfig& cfg) {
    const ThetaForm& theta = sigma1.theta();
    Sampler sampler(cfg.seed);
    Tracker tracker;

    auto random_vector = [&] {
        return Eigen::Vector3d{sampler.uniform(-1, 1), sampler.uniform(-1, 1), sampler.uniform(-1, 1)};
    };
    auto compare = [&](const GroupPoint& p, const Eigen::Vector3d& z, bool on_locus) {
        const GroupPoint q = apply(theta, m, p);
        const Mat3 J = jacobian(theta, m, p);
        tracker.add(p, z, ar_norm(sigma1, p, z), ar_norm(sigma2, q, J * z), on_locus);
    };

    for (std::size_t i = 0; i < cfg.points; ++i) {
        const GroupPoint p = sampler.point(cfg.box);
        const Mat3 M = frame_matrix(sigma1, p);
        for (std::size_t k = 0; k < cfg.tangents_per_point; ++k) {
            compare(p, k < 3 ? Eigen::Vector3d(M.col(static_cast<Eigen::Index>(k))) : random_vector(), false);
        }
    }

    const std::vector<GroupPoint> locus = sample_locus_points(sigma1, cfg.locus_points, cfg.seed + 1, cfg.box);
    tracker.report.locus_points = locus.size();
    for (const GroupPoint& p : locus) {
        tracker.report.locus_image_residual =
            std::max(tracker.report.locus_image_residual, std::abs(locus_F(sigma2, apply(theta, m, p))));
        const Mat3 M = frame_matrix(sigma1, p);
        for (std::size_t k = 0; k < cfg.tangents_per_point; ++k) {
            Eigen::Vector3d z;
            switch (k % 4) {
                case 0: z = M.col(static_cast<Eigen::Index>(k / 4 % 3)); break;               // frame vector
                case 1: z = sampler.uniform(-1, 1) * M.col(1) + sampler.uniform(-1, 1) * M.col(2); break;  // in Delta^L
                default: z = random_vector(); break;                                           // generically outside
            }
            compare(p, z, true);
        }
    }

    IsometryReport& r = tracker.report;
    r.passed = r.max_rel_error <= cfg.tol && r.locus_image_residual < 1e-7;
    if (r.passed) r.witness.reset();
    return r;
}

Decomposition decompose(const GroupMap& m, const Ars& sigma2) {
    const ThetaForm& theta = sigma2.theta();
    const GroupPoint g = apply(theta, m, GroupPoint::identity());
    Decomposition out{g, m, 0.0, locus_F(sigma2, g)};
    if (std::holds_alternative<LeftTranslation>(m.variant())) {
        out.m0 = Automorphism::identity();
    } else if (!(g == GroupPoint::identity())) {
        out.m0 = Composite{{LeftTranslation{inv(theta, g)}, m}};
    }
    out.fixes_identity_residual = coord_norm(apply(theta, out.m0, GroupPoint::identity()));
    return out;
}

}  // namespace ars3d
