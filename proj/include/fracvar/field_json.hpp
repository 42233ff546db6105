#pragma once

#include <string>

#include <json.hpp>

#include "fracvar/field.hpp"
#include "fracvar/quadrature.hpp"

namespace fracvar {

/// Builds a field from a descriptor such as
///   {"kind":"gaussian","center":[0],"width":1}
///   {"kind":"f_alpha","alpha":0.5}
///   {"kind":"sum","terms":[{"coef":1,"field":{...}}, ...]}
/// Throws ParseError on unknown kinds or missing parameters.
ScalarField field_from_json(const nlohmann::json& j);

/// {"kind":"vector","components":[...]} or a bare array of field descriptors.
/// A scalar descriptor of dimension 1 is accepted as a one-component field.
VectorField vector_field_from_json(const nlohmann::json& j);

/// Inline JSON text, or "@path" to read it from a file.
nlohmann::json load_json_argument(const std::string& text);

/// Overrides the defaults in `base` with the keys rel_tol, abs_tol,
/// near_radius and max_evals.
quad::QuadSpec quad_spec_from_json(const nlohmann::json& j, quad::QuadSpec base);

}  // namespace fracvar
