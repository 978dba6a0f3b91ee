// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "ars3d/errors.hpp"
#include "commands.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "oracles.hpp"

using namespace ars3d;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Records the first few failures; the rest are counted.
class Checker {
public:
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ++failures_;
        if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
    }
    void track(double& worst, double value) { worst = std::max(worst, value); }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream os;
        os << summary;
        if (failures_ > 0) os << " | " << failures_ << " failure(s): " << notes_.str();
        return {failures_ == 0, os.str()};
    }

private:
    std::size_t failures_ = 0;
    std::ostringstream notes_;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

SamplerConfig sampling(std::size_t points, std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.points = points;
    cfg.seed = seed;
    cfg.locus_points = 32;
    return cfg;
}

Outcome demo() {
    Checker c;
    std::ostringstream out, err;
    const int code = cli::cmd_demo_counterexample(cli::DemoFlags{}, {out, err});
    c.expect(code == cli::kOk, "exit code " + std::to_string(code));
    const io::json j = io::json::parse(out.str());
    const double e = j["max_rel_error"].get<double>();
    const auto n = j["samples_checked"].get<std::size_t>();
    c.expect(j["isometry"].get<bool>(), "isometry=false");
    c.expect(!j["automorphism"].get<bool>(), "automorphism=true");
    c.expect(!j["rank_two"].get<bool>(), "rank_two=true");
    c.expect(e < 1e-9, "error " + fmt("%.3g", e));
    c.expect(n >= 1000, "only " + std::to_string(n) + " samples");
    return c.outcome("max error " + fmt("%.3g", e) + ", " + std::to_string(n) + " samples");
}

Outcome pullback_soundness() {
    Checker c;
    Sampler s(101);
    double worst = 0;
    std::uint64_t seed = 1000;
    for (const ThetaForm& f : gen::families()) {
        for (int i = 0; i < 100; ++i) {
            const Ars sigma = gen::ars(f, s, false);
            const Automorphism m = gen::automorphism(f, s);
            const IsometryReport r = verify_isometry(m, pullback(sigma, m), sigma, sampling(100, ++seed));
            c.track(worst, r.max_rel_error);
            c.expect(r.max_rel_error < 1e-8, to_string(f.family) + " error " + fmt("%.3g", r.max_rel_error));
        }
    }
    return c.outcome("500 pullbacks, max error " + fmt("%.3g", worst));
}

Outcome classification() {
    Checker c;
    Sampler s(102);
    double worst = 0;
    std::uint64_t seed = 2000;
    for (const ThetaForm& f : gen::families()) {
        const auto allowed = class_partition(f);
        for (int i = 0; i < 100; ++i) {
            const Ars sigma = gen::ars(f, s);
            const ClassificationResult r = classify(sigma);
            c.expect(allowed.contains(r.cls), to_string(f.family) + " class outside partition");
            const IsometryReport iso =
                verify_isometry(r.normalizer, r.canonical, sigma.rescaled(r.scale), sampling(100, ++seed));
            c.track(worst, iso.max_rel_error);
            c.expect(iso.max_rel_error < 1e-8, "normalizer error " + fmt("%.3g", iso.max_rel_error));
            const ClassificationResult again = classify(pullback(sigma, gen::automorphism(f, s)));
            c.expect(again.cls == r.cls, to_string(f.family) + " class changed under pullback");
        }
    }
    return c.outcome("500 structures, max normalizer error " + fmt("%.3g", worst));
}

Outcome disjointness() {
    Checker c;
    Sampler s(103);
    const std::vector<Vec2> dirs{{1, 0}, {0, 1}, {1, 1}};
    std::size_t distinct_pairs = 0;
    std::vector<ThetaForm> thetas = gen::families();
    thetas.push_back(ThetaForm::diagonal(0.0));
    for (const ThetaForm& f : thetas) {
        const auto allowed = class_partition(f);
        LinearField X = gen::field(f, s);
        while (std::abs(X.A().det()) < 0.1) X = gen::field(f, s);
        std::vector<CanonicalClass> got;
        for (const Vec2& eta : dirs) got.push_back(classify(gen::with_complement(X, 0.0, eta)).cls);
        std::set<CanonicalClass> seen(got.begin(), got.end());
        c.expect(seen == allowed, to_string(f.family) + fmt(" %.1f: not every class realized", f.gamma));
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            for (const CanonicalClass cls : allowed) {
                if (class_direction(cls) == dirs[k]) c.expect(got[k] == cls, "canonical direction misclassified");
            }
        }
        for (const CanonicalClass a : allowed) {
            for (const CanonicalClass b : allowed) {
                if (a == b) continue;
                ++distinct_pairs;
                c.expect(!automorphism_fit(f, a, b).has_value(), "fit found between distinct classes");
            }
        }
    }
    return c.outcome(std::to_string(distinct_pairs) + " ordered class pairs infeasible");
}

Outcome oracles() {
    Checker c;
    Sampler s(104);
    double worst_flow = 0, worst_mat = 0;
    for (int i = 0; i < 100; ++i) {
        const ThetaForm f = gen::families()[i % 5];
        const LinearField X = gen::field(f, s, false);
        const GroupPoint p = s.point(1.0);
        for (const double sv : {-2.0, -1.3, -0.4, 0.5, 1.1, 2.0}) {
            const GroupPoint want = oracle::rk4_flow(X.theta_mat(), X.xi(), X.A(), sv, p);
            const double e = distance(flow(X, sv, p), want);
            c.track(worst_flow, e);
            c.expect(e < 1e-6, "flow error " + fmt("%.3g", e));
        }
    }
    const std::vector<Mat2> special{Mat2::zero(), Mat2::identity(), Mat2{1, 1, 0, 1}, Mat2{0, 1, 0, 0},
                                    Mat2{0, -1, 1, 0}, Mat2{2, 0, 0, -2}};
    for (int i = 0; i < 600; ++i) {
        const Mat2 A = i < 6 ? special[i] : gen::mat(s, 2.0);
        const double t = s.uniform(-2, 2);
        const double e1 = oracle::rel_error(expm2(A, t), oracle::expm(A, t));
        const double e2 = oracle::rel_error(lambda_op(A, t), oracle::lambda(A, t));
        c.track(worst_mat, std::max(e1, e2));
        c.expect(e1 < 1e-10 && e2 < 1e-10, "matrix function error " + fmt("%.3g", std::max(e1, e2)));
    }
    return c.outcome("flow sup error " + fmt("%.3g", worst_flow) + ", expm2/lambda_op " + fmt("%.3g", worst_mat));
}

Outcome invariants() {
    Checker c;
    Sampler s(105);
    const auto fams = gen::families();
    constexpr int kN = 10000;
    for (int i = 0; i < kN; ++i) {
        const ThetaForm& f = fams[i % fams.size()];
        const GroupPoint g = s.point(1.5), h = s.point(1.5), k = s.point(1.5);

        const GroupPoint lhs = mul(f, mul(f, g, h), k);
        const GroupPoint rhs = mul(f, g, mul(f, h, k));
        const double scale = 1 + coord_norm(lhs);
        c.expect(distance(lhs, rhs) <= 1e-12 * scale, "associativity");
        c.expect(distance(mul(f, g, inv(f, g)), GroupPoint::identity()) <= 1e-12 * (1 + coord_norm(g)),
                 "inverse");
        c.expect(mul(f, g, GroupPoint::identity()) == g && mul(f, GroupPoint::identity(), g) == g, "identity");

        const Mat2 A = gen::mat(s);
        const double t1 = s.uniform(-1, 1), t2 = s.uniform(-1, 1);
        const Mat2 cocycle = lambda_op(A, t1) + expm2(A, t1) * lambda_op(A, t2);
        c.expect(oracle::rel_error(lambda_op(A, t1 + t2), cocycle) < 1e-12, "lambda cocycle");
        c.expect(oracle::rel_error(expm2(A, t1) - Mat2::identity(), lambda_op(A, t1) * A) < 1e-12,
                 "e^{sA} - I = Lambda A");

        const LinearField X = gen::field(f, s, false);
        const double sv = s.uniform(-1, 1);
        const GroupPoint fg = flow(X, sv, mul(f, g, h));
        const GroupPoint gf = mul(f, flow(X, sv, g), flow(X, sv, h));
        c.expect(distance(fg, gf) <= 1e-10 * (1 + coord_norm(fg)), "flow automorphism");

        const AlgebraElement x = gen::element(s);
        const double a = s.uniform(-1, 1), b = s.uniform(-1, 1);
        const GroupPoint sum = exp_g(f, x * (a + b));
        const GroupPoint prod = mul(f, exp_g(f, x * a), exp_g(f, x * b));
        c.expect(distance(sum, prod) <= 1e-11 * (1 + coord_norm(sum)), "one-parameter subgroup");

        const AlgebraElement y = gen::element(s), z = gen::element(s);
        const AlgebraElement jac = bracket(f, x, bracket(f, y, z)) + bracket(f, y, bracket(f, z, x)) +
                                   bracket(f, z, bracket(f, x, y));
        c.expect(jac.norm() <= 1e-12, "Jacobi");
    }
    return c.outcome(std::to_string(kN) + " samples per identity");
}

Outcome norms() {
    Checker c;
    Sampler s(106), search(107);
    int instances = 0, frame_checks = 0, locus_checks = 0;
    double worst_gap = 0;
    for (const ThetaForm& f : gen::families()) {
        const Ars sigma = gen::ars(f, s);
        for (int i = 0; i < 20; ++i, ++instances) {
            const GroupPoint p = s.point(2.0);
            const Eigen::Vector3d z{s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1)};
            const double got = ar_norm(sigma, p, z);
            const double want = oracle::norm_search(frame_matrix(sigma, p), z, search);
            c.expect(got <= want + 1e-8 && got >= want - 1e-3, "norm outside oracle band");
            if (std::isfinite(want)) c.track(worst_gap, std::abs(got - want));
            if (std::abs(locus_F(sigma, p)) > 1e-6) {
                const Mat3 M = frame_matrix(sigma, p);
                for (int k = 0; k < 3; ++k, ++frame_checks) {
                    c.expect(std::abs(ar_norm(sigma, p, Eigen::Vector3d(M.col(k))) - 1.0) < 1e-9, "frame norm");
                }
            }
        }
        for (const GroupPoint& p : sample_locus_points(sigma, 20, 108, 2.0)) {
            const Mat3 M = frame_matrix(sigma, p);
            const Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU);
            const Eigen::Vector3d outside = svd.matrixU().col(2);
            const Eigen::Vector3d inside = M * Eigen::Vector3d{s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1)};
            c.expect(std::isinf(ar_norm(sigma, p, outside)), "finite norm outside range");
            c.expect(std::isinf(oracle::norm_search(M, outside, search)), "oracle finite outside range");
            c.expect(std::isfinite(ar_norm(sigma, p, inside)), "infinite norm inside range");
            c.expect(std::isfinite(oracle::norm_search(M, inside, search)), "oracle infinite inside range");
            ++locus_checks;
        }
    }
    return c.outcome(std::to_string(instances) + " oracle instances (max gap " + fmt("%.3g", worst_gap) + "), " +
                     std::to_string(frame_checks) + " frame vectors, " + std::to_string(locus_checks) +
                     " locus points");
}

Outcome locus() {
    Checker c;
    Sampler s(109);
    std::size_t zeros = 0, mapped = 0, curves = 0, contained = 0, max_seen = 0;
    for (const ThetaForm& f : gen::families()) {
        const Ars sigma = gen::ars(f, s);
        const LinearField& X = sigma.X();
        if (std::abs(X.A().det()) > 1e-3) {
            for (int i = 0; i < 100; ++i, ++zeros) {
                const double t = s.uniform(-2, 2);
                const GroupPoint p{t, X.A().inverse() * (lambda_op(X.theta_mat(), t) * X.xi()) * -1.0};
                c.expect(std::abs(locus_F(sigma, p)) < 1e-10, "zero of X off the locus");
            }
        }
        const Automorphism m = gen::automorphism(f, s);
        const Ars pulled = pullback(sigma, m);
        for (const GroupPoint& p : sample_locus_points(pulled, 40, 110, 2.0)) {
            c.expect(std::abs(locus_F(sigma, apply(f, m, p))) < 1e-7, "image off the target locus");
            ++mapped;
        }
    }
    const auto fams = gen::families();
    for (int i = 0; i < 1000; ++i, ++curves) {
        const ThetaForm& f = fams[i % fams.size()];
        const Ars sigma = gen::ars(f, s, i % 3 != 0);
        const Curve curve = i % 2 == 0 ? Curve(ExponentialCurve{gen::element(s)}) : Curve(FlowCurve{});
        const GroupPoint p0 = s.point(1.0);
        try {
            const Crossings r = crossings(sigma, curve, p0, -2.0, 2.0);
            if (r.contained) {
                ++contained;
                continue;
            }
            max_seen = std::max(max_seen, r.roots.size());
            for (std::size_t k = 0; k < r.roots.size(); ++k) {
                if (k > 0) c.expect(r.roots[k] > r.roots[k - 1], "roots not isolated");
                const GroupPoint q = curve_point(sigma, curve, p0, r.roots[k]);
                c.expect(std::abs(locus_F(sigma, q)) < 1e-7 * (1 + coord_norm(q)), "root off the locus");
            }
        } catch (const TooManyCrossingsError&) {
            c.expect(false, "more than 32 roots");
        }
    }
    return c.outcome(std::to_string(zeros) + " zeros, " + std::to_string(mapped) + " mapped locus points, " +
                     std::to_string(curves) + " curves (" + std::to_string(contained) + " contained, max " +
                     std::to_string(max_seen) + " roots)");
}

struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"counterexample reproduction", 5, demo},
        {"pullback soundness", 60, pullback_soundness},
        {"classification partition and invariance", 120, classification},
        {"class disjointness", 0, disjointness},
        {"closed forms vs ODE and quadrature oracles", 0, oracles},
        {"algebra and group invariants", 0, invariants},
        {"sub-Riemannian norm", 0, norms},
        {"singular locus properties", 0, locus},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& cr = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.budget_s > 0 && secs >= cr.budget_s) {
            o.ok = false;
            o.detail += " | over budget of " + fmt("%.0f", cr.budget_s) + " s";
        }
        if (!o.ok) ++failed;
        std::printf("%s [%zu] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, cr.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
