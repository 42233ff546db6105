#include "fracvar/field_json.hpp"

#include <fstream>
#include <sstream>

#include "fracvar/errors.hpp"

namespace fracvar {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("field descriptor: missing \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw ParseError(std::string("field descriptor: \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

Point point_of(const json& v, const char* key) {
  if (v.is_number()) return Point{v.get<double>()};
  if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(Point::kMaxDim))
    throw ParseError(std::string("field descriptor: \"") + key + "\" must be a number or an array of 1 to 3 numbers");
  Point p(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ParseError(std::string("field descriptor: \"") + key + "\" has a non-number entry");
    p[static_cast<int>(i)] = v[i].get<double>();
  }
  return p;
}

Point point(const json& j, const char* key) { return point_of(need(j, key), key); }

int dim_or(const json& j, int fallback) {
  if (!j.contains("dim")) return fallback;
  const json& v = j.at("dim");
  if (!v.is_number_integer()) throw ParseError("field descriptor: \"dim\" must be an integer");
  return v.get<int>();
}

void check_dim(const json& j, int n) {
  if (j.contains("dim") && dim_or(j, n) != n) throw ParseError("field descriptor: \"dim\" contradicts the center");
}

}  // namespace

ScalarField field_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("field descriptor must be a JSON object");
  const std::string kind = need(j, "kind").get<std::string>();
  try {
    if (kind == "gaussian") {
      const Point c = point(j, "center");
      check_dim(j, c.dim());
      return fields::gaussian(c, number_or(j, "width", 1.0), number_or(j, "amplitude", 1.0));
    }
    if (kind == "smooth_bump") {
      const Point c = point(j, "center");
      check_dim(j, c.dim());
      return fields::smooth_bump(c, number_or(j, "radius", 1.0), number_or(j, "amplitude", 1.0));
    }
    if (kind == "plateau") {
      return fields::plateau(point(j, "lo"), point(j, "hi"), number(j, "gap"), number_or(j, "amplitude", 1.0));
    }
    if (kind == "interval_indicator") {
      return fields::interval_indicator(number_or(j, "center", 0.0), number_or(j, "radius", 1.0));
    }
    if (kind == "cube_indicator") {
      const Point c = j.contains("center") ? point(j, "center") : Point(dim_or(j, 1));
      check_dim(j, c.dim());
      return fields::cube_indicator(c, number_or(j, "half_side", 1.0));
    }
    if (kind == "half_space_indicator") {
      const Point nu = point(j, "nu");
      const Point x0 = j.contains("x0") ? point(j, "x0") : Point(nu.dim());
      return fields::half_space_indicator(HalfSpace::from_direction(nu, x0));
    }
    if (kind == "f_alpha") return fields::f_alpha(number(j, "alpha"));
    if (kind == "magic_cube") return fields::magic_cube(dim_or(j, 1), number(j, "alpha"));
    if (kind == "mollified") return fields::mollified(field_from_json(need(j, "base")), number(j, "eps"));
    if (kind == "constant") return fields::constant(dim_or(j, 1), number(j, "value"));
    if (kind == "product") {
      const json& fs = need(j, "factors");
      if (!fs.is_array() || fs.size() < 2) throw ParseError("product: \"factors\" needs at least two fields");
      ScalarField acc = field_from_json(fs[0]);
      for (std::size_t i = 1; i < fs.size(); ++i) acc = fields::product(acc, field_from_json(fs[i]));
      return acc;
    }
    if (kind == "sum") {
      const json& ts = need(j, "terms");
      if (!ts.is_array() || ts.empty()) throw ParseError("sum: \"terms\" must be a non-empty array");
      std::vector<std::pair<double, ScalarField>> terms;
      for (const auto& t : ts) terms.emplace_back(number_or(t, "coef", 1.0), field_from_json(need(t, "field")));
      return fields::sum(std::move(terms));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("field descriptor: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("field descriptor: ") + e.what());
  }
  throw ParseError("field descriptor: unknown kind \"" + kind + "\"");
}

VectorField vector_field_from_json(const json& j) {
  const json* comps = nullptr;
  if (j.is_array()) {
    comps = &j;
  } else if (j.is_object() && j.value("kind", "") == "vector") {
    comps = &need(j, "components");
  } else {
    return VectorField({field_from_json(j)});
  }
  std::vector<ScalarField> out;
  for (const auto& c : *comps) out.push_back(field_from_json(c));
  try {
    return VectorField(std::move(out));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

json load_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ParseError("cannot read " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

quad::QuadSpec quad_spec_from_json(const json& j, quad::QuadSpec base) {
  if (!j.is_object()) throw ParseError("\"quad\" must be an object");
  try {
    if (j.contains("rel_tol")) base.rel_tol = j.at("rel_tol").get<double>();
    if (j.contains("abs_tol")) base.abs_tol = j.at("abs_tol").get<double>();
    if (j.contains("near_radius")) base.near_radius = j.at("near_radius").get<double>();
    if (j.contains("max_evals")) base.max_evals = j.at("max_evals").get<long>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("\"quad\": ") + e.what());
  }
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return base;
}

}  // namespace fracvar
