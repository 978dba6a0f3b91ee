#include "ars3d/ars.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ars3d/errors.hpp"
#include "ars3d/sampling.hpp"

namespace ars3d {

Eigen::Vector3d to_vector(const AlgebraElement& x) { return {x.alpha, x.eta.x, x.eta.y}; }

AlgebraElement to_algebra(const Eigen::Vector3d& x) { return {x(0), {x(1), x(2)}}; }

Eigen::Vector3d to_vector(const Tangent& z) { return {z.dt, z.dv.x, z.dv.y}; }

Distribution::Distribution(const AlgebraElement& b1, const AlgebraElement& b2) : b1_(b1), b2_(b2) {
    const Eigen::Vector3d u = to_vector(b1);
    const Eigen::Vector3d w = to_vector(b2);
    if (!u.allFinite() || !w.allFinite()) throw ValidationError("distribution basis must be finite");
    if (u.cross(w).norm() <= 1e-12 * u.norm() * w.norm() || u.norm() == 0.0 || w.norm() == 0.0) {
        throw ValidationError("distribution basis is linearly dependent");
    }
    if (b1.alpha == 0.0 && b2.alpha == 0.0) throw ValidationError("distribution equals nilradical");
}

Distribution Distribution::from_gram(const AlgebraElement& u1, const AlgebraElement& u2, double g11, double g12,
                                     double g22) {
    const double schur = g22 - g12 * g12 / g11;
    if (!(g11 > 0.0) || !(schur > 0.0)) throw ValidationError("gram matrix is not positive definite");
    const double s1 = std::sqrt(g11);
    const AlgebraElement e1 = u1 * (1.0 / s1);
    const AlgebraElement e2 = (u2 - e1 * (g12 / s1)) * (1.0 / std::sqrt(schur));
    return {e1, e2};
}

Eigen::Vector3d Distribution::normal() const { return to_vector(b1_).cross(to_vector(b2_)).normalized(); }

AlgebraElement bracket(const ThetaForm& theta, const AlgebraElement& x, const AlgebraElement& y) {
    const Mat2 th = theta_matrix(theta);
    return {0.0, th * (y.eta * x.alpha) - th * (x.eta * y.alpha)};
}

namespace {

// Scale-aware span membership: |<u, n>| <= tol * scale with n the unit normal.
bool in_span(const Distribution& delta, const Eigen::Vector3d& u, double scale) {
    return std::abs(u.dot(delta.normal())) <= default_tolerance() * scale;
}

AlgebraElement unit(const AlgebraElement& x) { return x * (1.0 / x.norm()); }

}  // namespace

bool is_subalgebra(const ThetaForm& theta, const Distribution& delta) {
    const AlgebraElement c = bracket(theta, unit(delta.b1()), unit(delta.b2()));
    return in_span(delta, to_vector(c), 1.0 + theta_matrix(theta).frobenius());
}

bool larc(const ThetaForm& theta, const Distribution& delta, const LinearField& X) {
    if (!is_subalgebra(theta, delta)) return true;
    const Mat3 D = derivation_of(X);
    const double scale = 1.0 + D.norm();
    for (const AlgebraElement& b : {delta.b1(), delta.b2()}) {
        if (!in_span(delta, D * to_vector(unit(b)), scale)) return true;
    }
    return false;
}

Vec2 nilradical_line(const Distribution& delta) {
    const AlgebraElement& b1 = delta.b1();
    const AlgebraElement& b2 = delta.b2();
    Vec2 eta = b1.eta * b2.alpha - b2.eta * b1.alpha;
    const double n = eta.norm();
    if (n == 0.0) throw ValidationError("distribution meets the nilradical trivially");
    eta = eta / n;
    if (eta.x < 0.0 || (eta.x == 0.0 && eta.y < 0.0)) eta = -eta;
    return eta;
}

double locus_F(const LinearField& X, const Vec2& eta_star, const GroupPoint& p) {
    const Vec2 xv = eval_linear(X, p).dv;
    return cross(xv, expm2(X.theta_mat(), p.t) * eta_star);
}

bool nonempty_complement(const LinearField& X, const Vec2& eta_star) {
    Sampler sampler(kDefaultSeed);
    double fmax = 0.0;
    for (int i = 0; i < 64; ++i) fmax = std::max(fmax, std::abs(locus_F(X, eta_star, sampler.point(2.0))));
    return fmax > 1e-12;
}

ArsChecks check(const LinearField& X, const Distribution& delta) {
    ArsChecks c;
    c.admissible = X.admissible();
    if (!c.admissible) c.reasons.emplace_back("linear field matrix A does not commute with theta");
    c.larc = larc(X.theta(), delta, X);
    if (!c.larc) c.reasons.emplace_back("LARC fails: distribution is a subalgebra invariant under the derivation");
    c.nonempty_complement = nonempty_complement(X, nilradical_line(delta));
    if (!c.nonempty_complement) c.reasons.emplace_back("linear field lies in the distribution at every point");
    c.rank_two = rank_two(X);
    return c;
}

Ars Ars::create(const LinearField& X, const Distribution& delta) {
    const Vec2 eta_star = nilradical_line(delta);
    if (!larc(X.theta(), delta, X)) {
        throw ValidationError("LARC fails: distribution is a subalgebra invariant under the derivation");
    }
    if (!nonempty_complement(X, eta_star)) {
        throw ValidationError("linear field lies in the distribution at every point");
    }
    return Ars(X, delta, eta_star);
}

Ars Ars::rescaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw std::invalid_argument("rescale factor must be positive");
    return Ars(X_, Distribution(delta_.b1() * factor, delta_.b2() * factor), eta_star_);
}

Frame frame_at(const Ars& sigma, const GroupPoint& p) {
    return {eval_linear(sigma.X(), p), dL(sigma.theta(), p, sigma.delta().b1()),
            dL(sigma.theta(), p, sigma.delta().b2())};
}

Mat3 frame_matrix(const Ars& sigma, const GroupPoint& p) {
    const Frame f = frame_at(sigma, p);
    Mat3 M;
    M.col(0) = to_vector(f.x);
    M.col(1) = to_vector(f.y1);
    M.col(2) = to_vector(f.y2);
    return M;
}

double ar_norm(const Ars& sigma, const GroupPoint& p, const Eigen::Vector3d& z) {
    const Mat3 M = frame_matrix(sigma, p);
    const Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d& sv = svd.singularValues();
    const double cutoff = 1e-9 * sv(0);
    const Eigen::Vector3d uz = svd.matrixU().transpose() * z;
    Eigen::Vector3d coeff = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k) {
        if (sv(k) > cutoff) coeff(k) = uz(k) / sv(k);
    }
    const Eigen::Vector3d alpha = svd.matrixV() * coeff;
    const double residual = (M * alpha - z).norm();
    if (residual >= 1e-8 * (1.0 + z.norm())) return std::numeric_limits<double>::infinity();
    return alpha.norm();
}

double ar_norm(const Ars& sigma, const GroupPoint& p, const Tangent& z) { return ar_norm(sigma, p, to_vector(z)); }

double locus_F(const Ars& sigma, const GroupPoint& p) { return locus_F(sigma.X(), sigma.eta_star(), p); }

std::vector<Polyline> locus_slice(const Ars& sigma, double t, const Window& window, int resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
    if (!(window.v1_min < window.v1_max) || !(window.v2_min < window.v2_max)) {
        throw std::invalid_argument("window must satisfy min < max on both axes");
    }
    const int n = resolution;
    const double h1 = (window.v1_max - window.v1_min) / (n - 1);
    const double h2 = (window.v2_max - window.v2_min) / (n - 1);
    auto node = [&](int i, int j) { return Vec2{window.v1_min + i * h1, window.v2_min + j * h2}; };

    std::vector<double> f(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(j) * n + i] = locus_F(sigma, {t, node(i, j)});
    }
    auto value = [&](int i, int j) { return f[static_cast<std::size_t>(j) * n + i]; };

    // Each crossing lives on a grid edge; edges are keyed so that adjacent
    // cells share endpoints exactly, which makes stitching combinatorial.
    auto h_edge = [&](int i, int j) { return 2L * (static_cast<long>(j) * n + i); };
    auto v_edge = [&](int i, int j) { return 2L * (static_cast<long>(j) * n + i) + 1; };
    std::map<long, Vec2> points;
    auto crossing = [&](long key, int ia, int ja, int ib, int jb) {
        const double fa = value(ia, ja), fb = value(ib, jb);
        const double w = fa / (fa - fb);
        points.emplace(key, node(ia, ja) + (node(ib, jb) - node(ia, ja)) * w);
        return key;
    };

    std::map<long, std::vector<long>> adjacency;
    auto link = [&](long a, long b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    };

    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const bool c0 = value(i, j) > 0.0, c1 = value(i + 1, j) > 0.0;
            const bool c2 = value(i + 1, j + 1) > 0.0, c3 = value(i, j + 1) > 0.0;
            std::vector<long> e;
            long ids[4] = {-1, -1, -1, -1};
            if (c0 != c1) ids[0] = crossing(h_edge(i, j), i, j, i + 1, j);
            if (c1 != c2) ids[1] = crossing(v_edge(i + 1, j), i + 1, j, i + 1, j + 1);
            if (c3 != c2) ids[2] = crossing(h_edge(i, j + 1), i, j + 1, i + 1, j + 1);
            if (c0 != c3) ids[3] = crossing(v_edge(i, j), i, j, i, j + 1);
            for (long id : ids) {
                if (id >= 0) e.push_back(id);
            }
            if (e.size() == 2) {
                link(e[0], e[1]);
            } else if (e.size() == 4) {
                const double centre = 0.25 * (value(i, j) + value(i + 1, j) + value(i + 1, j + 1) + value(i, j + 1));
                if ((centre > 0.0) == c0) {
                    link(ids[0], ids[1]);
                    link(ids[2], ids[3]);
                } else {
                    link(ids[0], ids[3]);
                    link(ids[1], ids[2]);
                }
            }
        }
    }

    std::vector<Polyline> lines;
    std::map<long, bool> visited;
    auto walk = [&](long start) {
        Polyline line{points.at(start)};
        visited[start] = true;
        long prev = -1, cur = start;
        for (;;) {
            long next = -1;
            for (long nb : adjacency[cur]) {
                if (nb != prev && !visited[nb]) {
                    next = nb;
                    break;
                }
            }
            if (next < 0) {
                // Close loops back onto their start.
                for (long nb : adjacency[cur]) {
                    if (nb == start && prev != start && line.size() > 2) line.push_back(points.at(start));
                }
                break;
            }
            line.push_back(points.at(next));
            visited[next] = true;
            prev = cur;
            cur = next;
        }
        lines.push_back(std::move(line));
    };
    for (const auto& [key, nbs] : adjacency) {
        if (nbs.size() == 1 && !visited[key]) walk(key);
    }
    for (const auto& [key, nbs] : adjacency) {
        if (!visited[key]) walk(key);
    }
    return lines;
}

GroupPoint curve_point(const Ars& sigma, const Curve& curve, const GroupPoint& p0, double s) {
    if (const auto* e = std::get_if<ExponentialCurve>(&curve)) {
        return flow_invariant(sigma.theta(), InvariantField{e->gen}, s, p0);
    }
    return flow(sigma.X(), s, p0);
}

Crossings crossings(const Ars& sigma, const Curve& curve, const GroupPoint& p0, double lo, double hi,
                    std::size_t max_roots) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("crossing interval must be bounded with lo < hi");
    }
    constexpr int kSamples = 512;
    auto F = [&](double s) { return locus_F(sigma, curve_point(sigma, curve, p0, s)); };

    std::vector<double> s(kSamples), f(kSamples);
    bool contained = true;
    for (int i = 0; i < kSamples; ++i) {
        s[i] = lo + (hi - lo) * i / (kSamples - 1);
        const GroupPoint p = curve_point(sigma, curve, p0, s[i]);
        f[i] = locus_F(sigma, p);
        if (std::abs(f[i]) >= 1e-11 * (1.0 + coord_norm(p))) contained = false;
    }
    Crossings out;
    if (contained) {
        out.contained = true;
        return out;
    }
    for (int i = 0; i < kSamples; ++i) {
        if (f[i] == 0.0) {
            out.roots.push_back(s[i]);
        } else if (i + 1 < kSamples && f[i + 1] != 0.0 && (f[i] > 0.0) != (f[i + 1] > 0.0)) {
            double a = s[i], b = s[i + 1], fa = f[i];
            for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = F(mid);
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
            out.roots.push_back(0.5 * (a + b));
        }
        if (out.roots.size() > max_roots) {
            throw TooManyCrossingsError("curve crosses the singular locus more than " + std::to_string(max_roots) +
                                        " times on the interval");
        }
    }
    return out;
}

}  // namespace ars3d
