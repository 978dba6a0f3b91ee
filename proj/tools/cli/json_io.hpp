#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "ars3d/classify.hpp"

namespace ars3d::io {

using nlohmann::json;

/// Structurally malformed input (wrong keys or types); maps to exit code 64.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sorted keys, finite numbers printed with 17 significant digits, non-finite
/// numbers as null.
std::string dump_canonical(const json& j, int indent = 2);

json to_json(const Vec2& v);
json to_json(const Mat2& m);
json to_json(const ThetaForm& theta);
json to_json(const GroupPoint& p);
json to_json(const LinearField& X);
json to_json(const Distribution& delta);
json to_json(const Ars& sigma);
json to_json(const Automorphism& m);
json to_json(const GroupMap& m);
json to_json(const IsometryReport& r);
json to_json(const FlowConjugation& f);
json to_json(const ClassificationResult& r);

Vec2 vec2_from(const json& j);
Mat2 mat2_from(const json& j);
ThetaForm theta_from(const json& j);
GroupPoint point_from(const json& j);
Automorphism automorphism_from(const json& j);
GroupMap map_from(const json& j);

/// Parsed but not yet validated ARS document.
struct ArsDocument {
    ThetaForm theta;
    Vec2 xi;
    Mat2 A;
    AlgebraElement u1;
    AlgebraElement u2;
    std::optional<Mat2> gram;
    std::optional<json> candidate_map;

    /// The field without the admissibility check; see LinearField::unchecked.
    LinearField linear_field() const;
    /// Throws ValidationError on a degenerate basis or gram matrix.
    Distribution distribution() const;
    /// Throws ValidationError on LARC or regular-set failure. Admissibility of
    /// the field is left to the caller.
    Ars ars() const;
};

/// Throws SchemaError.
ArsDocument parse_document(const json& j);
json to_document(const Ars& sigma);

}  // namespace ars3d::io
