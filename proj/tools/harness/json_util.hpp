#pragma once

#include "qlag/complex.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qlag::harness {

/// Complex values travel as ["re", "im"] decimal strings at full precision.
inline nlohmann::json complex_json(const Complex& z) { return {z.real().to_string(), z.imag().to_string()}; }

inline nlohmann::json complex_list_json(const std::vector<Complex>& v) {
  auto out = nlohmann::json::array();
  for (const auto& z : v) out.push_back(complex_json(z));
  return out;
}

/// Inverse of complex_json; accepts a bare number string as a real value.
inline Complex complex_from_json(const nlohmann::json& j, mpfr_prec_t prec) {
  if (j.is_array() && j.size() == 2) {
    return Complex(Real::parse(j[0].get<std::string>(), prec), Real::parse(j[1].get<std::string>(), prec));
  }
  return Complex(Real::parse(j.get<std::string>(), prec), Real(prec));
}

}  // namespace qlag::harness
