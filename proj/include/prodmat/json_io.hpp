#pragma once

#include <json.hpp>

#include "prodmat/polynomial.hpp"
#include "prodmat/series.hpp"

namespace prodmat {

/// JSON form of a polynomial: a list of terms, each with a decimal
/// coefficient string and a variable -> exponent map.
inline nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json vars = nlohmann::json::object();
    for (const auto& [v, e] : m.exponents()) vars[v.str()] = e;
    terms.push_back({{"coeff", c.str()}, {"vars", vars}});
  }
  return terms;
}

inline nlohmann::json to_json(const PowerSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(to_json(c));
  return coeffs;
}

}  // namespace prodmat
