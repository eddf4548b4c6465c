#pragma once

// JSON encoding of polynomials: an array of
//   {"Q": int, "v": int, "Q0": int, "coeff": "p/q" | "n"}
// in ascending monomial order, and {"num": [...], "den": [...]} for
// rational functions.

#include <pottschar/rational_function.hpp>

#include <json.hpp>

#include <string>

namespace pottschar {

using Json = nlohmann::ordered_json;

inline Json to_json(const MultiPoly& p) {
  Json arr = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json term = Json::object();
    term["Q"] = e[0];
    term["v"] = e[1];
    term["Q0"] = e[2];
    term["coeff"] = rational_string(c);
    arr.push_back(std::move(term));
  }
  return arr;
}

inline Json to_json(const RationalFunction& r) {
  Json obj = Json::object();
  obj["num"] = to_json(r.num());
  obj["den"] = to_json(r.den());
  return obj;
}

inline MultiPoly poly_from_json(const Json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  MultiPoly p;
  for (const auto& term : arr) {
    if (!term.is_object()) throw std::invalid_argument("polynomial term must be an object");
    Exponents e{0, 0, 0};
    for (Var x : kAllVars) {
      auto key = std::string(var_name(x));
      if (!term.contains(key)) continue;
      const auto& deg = term.at(key);
      if (!deg.is_number_integer() || deg.get<long long>() < 0)
        throw std::invalid_argument("exponent of " + key + " must be a nonnegative integer");
      e[static_cast<std::size_t>(x)] = deg.get<std::uint32_t>();
    }
    if (!term.contains("coeff") || !term.at("coeff").is_string())
      throw std::invalid_argument("polynomial term needs a string coeff");
    p.add_term(e, parse_rational(term.at("coeff").get<std::string>()));
  }
  return p;
}

inline RationalFunction rational_function_from_json(const Json& obj) {
  if (!obj.is_object() || !obj.contains("num") || !obj.contains("den"))
    throw std::invalid_argument("rational function JSON needs num and den");
  return RationalFunction(poly_from_json(obj.at("num")), poly_from_json(obj.at("den")));
}

}  // namespace pottschar
