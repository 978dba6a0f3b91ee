#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ars3d/errors.hpp"

namespace ars3d::io {

namespace {

void dump_number(std::ostringstream& os, double x) {
    if (!std::isfinite(x)) {
        os << "null";
        return;
    }
    if (x == 0.0) x = 0.0;  // drops the sign of -0
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        // Integral values keep a trailing ".0" so readers see a float.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", x);
        os << buf;
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
}

void dump_rec(std::ostringstream& os, const json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << json(key).dump() << (indent < 0 ? ":" : ": ");
                dump_rec(os, value, indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                dump_rec(os, value, indent, depth + 1);
            }
            newline(depth);
            os << ']';
            return;
        }
        case json::value_t::number_float:
            dump_number(os, j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
    return j.get<double>();
}

const json& field(const json& j, const char* key, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + " must be an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string(what) + " is missing \"" + key + "\"");
    return *it;
}

AlgebraElement algebra_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw SchemaError("basis vectors must be [alpha, eta_x, eta_y]");
    return {number(j[0], "alpha"), {number(j[1], "eta_x"), number(j[2], "eta_y")}};
}

json to_json(const AlgebraElement& x) { return json::array({x.alpha, x.eta.x, x.eta.y}); }

json to_json(const Eigen::Vector3d& z) { return json::array({z(0), z(1), z(2)}); }

}  // namespace

std::string dump_canonical(const json& j, int indent) {
    std::ostringstream os;
    dump_rec(os, j, indent, 0);
    return os.str();
}

json to_json(const Vec2& v) { return json::array({v.x, v.y}); }

json to_json(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

json to_json(const ThetaForm& theta) { return {{"family", to_string(theta.family)}, {"gamma", theta.gamma}}; }

json to_json(const GroupPoint& p) { return {{"t", p.t}, {"v", to_json(p.v)}}; }

json to_json(const LinearField& X) { return {{"xi", to_json(X.xi())}, {"A", to_json(X.A())}}; }

json to_json(const Distribution& delta) {
    return {{"basis", json::array({to_json(delta.b1()), to_json(delta.b2())})}};
}

json to_json(const Ars& sigma) { return to_document(sigma); }

json to_json(const Automorphism& m) { return {{"eps", m.eps}, {"P", to_json(m.P)}, {"eta", to_json(m.eta)}}; }

json to_json(const GroupMap& m) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Automorphism>) {
                json out = to_json(x);
                out["type"] = "automorphism";
                return out;
            } else if constexpr (std::is_same_v<T, LeftTranslation>) {
                return {{"type", "translation"}, {"g", to_json(x.g)}};
            } else if constexpr (std::is_same_v<T, LinearCandidate>) {
                return {{"type", "linear"}, {"a", x.a}, {"P", to_json(x.P)}};
            } else {
                json maps = json::array();
                for (const GroupMap& inner : x.maps) maps.push_back(to_json(inner));
                return {{"type", "composite"}, {"maps", maps}};
            }
        },
        m.variant());
}

json to_json(const IsometryReport& r) {
    json out{{"passed", r.passed},
             {"max_rel_error", r.max_rel_error},
             {"samples_checked", r.samples_checked},
             {"locus_points", r.locus_points},
             {"locus_image_residual", r.locus_image_residual}};
    if (r.witness) {
        out["witness"] = {{"p", to_json(r.witness->p)},
                          {"z", to_json(r.witness->z)},
                          {"norm_source", r.witness->norm_source},
                          {"norm_image", r.witness->norm_image},
                          {"on_locus", r.witness->on_locus}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const FlowConjugation& f) {
    return {{"sign", f.sign}, {"residual", f.residual}, {"other_residual", f.other_residual}};
}

json to_json(const ClassificationResult& r) {
    return {{"class", static_cast<int>(r.cls)},
            {"sigma", r.sigma},
            {"euclidean", r.euclidean},
            {"scale", r.scale},
            {"normalizer", to_json(r.normalizer)},
            {"canonical", to_document(r.canonical)},
            {"eta", to_json(r.eta)},
            {"isometry_residual", r.isometry_residual},
            {"nilradical_norm", r.nilradical_norm},
            {"nilradical_norm_matches", r.norm_match},
            {"warnings", r.warnings}};
}

Vec2 vec2_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("vectors must be [x, y]");
    return {number(j[0], "vector entry"), number(j[1], "vector entry")};
}

Mat2 mat2_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("matrices must be [[a, b], [c, d]]");
    const Vec2 r0 = vec2_from(j[0]);
    const Vec2 r1 = vec2_from(j[1]);
    return {r0.x, r0.y, r1.x, r1.y};
}

ThetaForm theta_from(const json& j) {
    const json& fam = field(j, "family", "theta");
    if (!fam.is_string()) throw SchemaError("theta.family must be a string");
    ThetaForm out;
    try {
        out.family = family_from_string(fam.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    const auto it = j.find("gamma");
    out.gamma = it == j.end() ? 0.0 : number(*it, "theta.gamma");
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return out;
}

GroupPoint point_from(const json& j) {
    return {number(field(j, "t", "point"), "point.t"), vec2_from(field(j, "v", "point"))};
}

Automorphism automorphism_from(const json& j) {
    const json& e = field(j, "eps", "automorphism");
    if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1)) {
        throw SchemaError("automorphism.eps must be 1 or -1");
    }
    return {e.get<int>(), mat2_from(field(j, "P", "automorphism")), vec2_from(field(j, "eta", "automorphism"))};
}

GroupMap map_from(const json& j) {
    if (!j.is_object()) throw SchemaError("candidate_map must be an object");
    std::string type = "automorphism";
    if (const auto it = j.find("type"); it != j.end()) {
        if (!it->is_string()) throw SchemaError("candidate_map.type must be a string");
        type = it->get<std::string>();
    }
    if (type == "automorphism") return automorphism_from(j);
    if (type == "translation") return LeftTranslation{point_from(field(j, "g", "translation"))};
    if (type == "linear") {
        return LinearCandidate{number(field(j, "a", "linear map"), "linear.a"), mat2_from(field(j, "P", "linear map"))};
    }
    if (type == "composite") {
        const json& maps = field(j, "maps", "composite");
        if (!maps.is_array() || maps.empty()) throw SchemaError("composite.maps must be a nonempty array");
        Composite c;
        for (const json& inner : maps) c.maps.push_back(map_from(inner));
        return c;
    }
    throw SchemaError("unknown map type \"" + type + "\"");
}

LinearField ArsDocument::linear_field() const { return LinearField::unchecked(theta, xi, A); }

Distribution ArsDocument::distribution() const {
    if (gram) {
        if (std::abs(gram->b - gram->c) > 1e-12 * (1.0 + gram->frobenius())) {
            throw ValidationError("gram matrix is not symmetric");
        }
        return Distribution::from_gram(u1, u2, gram->a, gram->b, gram->d);
    }
    return Distribution(u1, u2);
}

Ars ArsDocument::ars() const { return Ars::create(linear_field(), distribution()); }

ArsDocument parse_document(const json& j) {
    if (!j.is_object()) throw SchemaError("document must be a JSON object");
    ArsDocument doc;
    doc.theta = theta_from(field(j, "theta", "document"));
    const json& lf = field(j, "linear_field", "document");
    doc.xi = vec2_from(field(lf, "xi", "linear_field"));
    doc.A = mat2_from(field(lf, "A", "linear_field"));
    const json& dist = field(j, "distribution", "document");
    const json& basis = field(dist, "basis", "distribution");
    if (!basis.is_array() || basis.size() != 2) throw SchemaError("distribution.basis must hold two vectors");
    doc.u1 = algebra_from(basis[0]);
    doc.u2 = algebra_from(basis[1]);
    if (const auto it = dist.find("gram"); it != dist.end()) doc.gram = mat2_from(*it);
    if (const auto it = j.find("candidate_map"); it != j.end()) {
        map_from(*it);  // schema check only; evaluated by the caller
        doc.candidate_map = *it;
    }
    return doc;
}

json to_document(const Ars& sigma) {
    return {{"theta", to_json(sigma.theta())},
            {"linear_field", to_json(sigma.X())},
            {"distribution", to_json(sigma.delta())}};
}

}  // namespace ars3d::io
