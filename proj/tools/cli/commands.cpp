#include "commands.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ars3d/classify.hpp"
#include "ars3d/errors.hpp"
#include "json_io.hpp"

namespace ars3d::cli {

namespace {

using io::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(std::ostream& os, const json& j) { os << io::dump_canonical(j) << '\n'; }

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw io::SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

io::ArsDocument read_document(const std::string& path) { return io::parse_document(read_json(path)); }

template <class F>
int guarded(Streams io, F&& body) {
    try {
        return body();
    } catch (const IoError& e) {
        io.err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const io::SchemaError& e) {
        io.err << "schema error: " << e.what() << '\n';
        return kUsage;
    } catch (const RankError& e) {
        io.err << "rank error: " << e.what() << '\n';
        return kRank;
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << '\n';
        return kDomain;
    }
}

SamplerConfig sampler_config(const SamplingFlags& f) {
    SamplerConfig cfg;
    cfg.points = f.samples;
    cfg.seed = f.seed;
    cfg.box = f.box;
    cfg.tol = default_tolerance();
    return cfg;
}

/// Isometry, flow conjugation, automorphism and decomposition checks of m on sigma.
json verification_report(const GroupMap& m, const Ars& sigma, const SamplerConfig& cfg, bool& passed) {
    const IsometryReport iso = verify_isometry(m, sigma, sigma, cfg);
    passed = iso.passed;
    json out{{"isometry", io::to_json(iso)},
             {"is_automorphism", is_automorphism(sigma.theta(), m, cfg.tol)},
             {"admissible", sigma.X().admissible()},
             {"rank_two", rank_two(sigma.X())},
             {"map", io::to_json(m)}};
    try {
        out["flow_conjugation"] = io::to_json(verify_flow_conjugation(m, sigma, sigma, cfg));
    } catch (const NotConjugatingError& e) {
        out["flow_conjugation"] = {{"error", e.what()},
                                   {"residual_plus", e.residual_plus},
                                   {"residual_minus", e.residual_minus}};
    }
    const Decomposition d = decompose(m, sigma);
    out["decomposition"] = {{"g", io::to_json(d.g)},
                            {"locus_value", d.locus_value},
                            {"fixes_identity_residual", d.fixes_identity_residual}};
    return out;
}

void write_csv(std::ostream& os, double t, const std::vector<Polyline>& lines) {
    char buf[96];
    os << "t,v1,v2\n";
    for (const Polyline& line : lines) {
        for (const Vec2& v : line) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t + 0.0, v.x + 0.0, v.y + 0.0);
            os << buf;
        }
    }
}

}  // namespace

int cmd_validate(const std::string& path, Streams io) {
    return guarded(io, [&] {
        const io::ArsDocument doc = read_document(path);
        const LinearField X = doc.linear_field();
        json report;
        ArsChecks checks;
        try {
            checks = check(X, doc.distribution());
        } catch (const ValidationError& e) {
            checks.admissible = X.admissible();
            checks.rank_two = rank_two(X);
            checks.reasons.emplace_back(e.what());
        }
        report = {{"admissible", checks.admissible},
                  {"larc", checks.larc},
                  {"nonempty_complement", checks.nonempty_complement},
                  {"rank_two", checks.rank_two},
                  {"valid", checks.valid() && checks.reasons.empty()},
                  {"reasons", checks.reasons}};
        emit(io.out, report);
        return report["valid"].get<bool>() ? kOk : kDomain;
    });
}

int cmd_classify(const std::string& path, Streams io) {
    return guarded(io, [&] {
        const io::ArsDocument doc = read_document(path);
        if (!rank_two(doc.linear_field())) throw RankError("linear field is not rank two: Im A + R xi != R^2");
        emit(io.out, io::to_json(classify(doc.ars())));
        return kOk;
    });
}

int cmd_locus(const std::string& path, const LocusFlags& flags, Streams io) {
    return guarded(io, [&] {
        const Ars sigma = read_document(path).ars();
        const std::vector<Polyline> lines = locus_slice(sigma, flags.t, flags.window, flags.resolution);
        std::size_t points = 0;
        for (const Polyline& l : lines) points += l.size();
        const json summary{{"points", points}, {"polylines", lines.size()}, {"t", flags.t}};
        if (flags.out_path) {
            std::ofstream out(*flags.out_path, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot write " + *flags.out_path);
            write_csv(out, flags.t, lines);
            out.flush();
            if (!out) throw IoError("cannot write " + *flags.out_path);
            emit(io.out, summary);
        } else {
            write_csv(io.out, flags.t, lines);
            emit(io.err, summary);
        }
        return kOk;
    });
}

int cmd_verify(const std::string& path, const SamplingFlags& flags, Streams io) {
    return guarded(io, [&] {
        const io::ArsDocument doc = read_document(path);
        if (!doc.candidate_map) throw io::SchemaError("document has no candidate_map");
        const GroupMap m = io::map_from(*doc.candidate_map);
        const Ars sigma = doc.ars();
        bool passed = false;
        emit(io.out, verification_report(m, sigma, sampler_config(flags), passed));
        if (!passed) io.err << "isometry check failed; see witness\n";
        return passed ? kOk : kDomain;
    });
}

int cmd_demo_counterexample(const DemoFlags& flags, Streams io) {
    return guarded(io, [&] {
        const ThetaForm theta = ThetaForm::diagonal(0.0);
        const Distribution delta({1.0, {}}, {0.0, {0.0, 1.0}});
        // The classical data (xi = 0, A = e_1 e_2^T) does not commute with theta;
        // it is kept as given. The override is a rank-two field for contrast.
        const LinearField X = flags.rank_two_field
                                  ? LinearField(theta, {1.0, 0.0}, Mat2::identity())
                                  : LinearField::unchecked(theta, {}, Mat2{0.0, 1.0, 0.0, 0.0});
        const Ars sigma = Ars::create(X, delta);
        const GroupMap m = LinearCandidate{-1.0, Mat2::identity()};

        bool passed = false;
        json details = verification_report(m, sigma, sampler_config(flags.sampling), passed);
        const bool automorphism = details["is_automorphism"].get<bool>();
        const bool r2 = rank_two(X);

        const bool expect_isometry = !flags.rank_two_field;
        const bool ok = passed == expect_isometry && !automorphism && r2 == flags.rank_two_field;
        emit(io.out, {{"isometry", passed},
                      {"automorphism", automorphism},
                      {"rank_two", r2},
                      {"admissible", X.admissible()},
                      {"max_rel_error", details["isometry"]["max_rel_error"]},
                      {"samples_checked", details["isometry"]["samples_checked"]},
                      {"rank_two_field", flags.rank_two_field}});
        if (!ok) io.err << "demo expectation not met\n";
        return ok ? kOk : kDemoFailure;
    });
}

int cmd_norm(const std::string& path, const GroupPoint& p, const Eigen::Vector3d& z, Streams io) {
    return guarded(io, [&] {
        const Ars sigma = read_document(path).ars();
        emit(io.out, {{"point", io::to_json(p)},
                      {"norm", ar_norm(sigma, p, z)},
                      {"locus_F", locus_F(sigma, p)}});
        return kOk;
    });
}

int cmd_flow(const std::string& path, const GroupPoint& p, double s, Streams io) {
    return guarded(io, [&] {
        const LinearField X = read_document(path).linear_field();
        emit(io.out, {{"point", io::to_json(flow(X, s, p))}, {"s", s}});
        return kOk;
    });
}

Window parse_window(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<double> v;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || errno != 0) throw std::invalid_argument("bad window value '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw std::invalid_argument("window needs v1min,v1max,v2min,v2max");
    return {v[0], v[1], v[2], v[3]};
}

void apply_tolerance_env() {
    const char* raw = std::getenv("ARS3D_TOL");
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const double tol = std::strtod(raw, &end);
    if (end == raw || *end != '\0') throw std::invalid_argument("ARS3D_TOL is not a number");
    set_default_tolerance(tol);
}

}  // namespace ars3d::cli
