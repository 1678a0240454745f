#pragma once

#include "qlag/complex.hpp"
#include "qlag/precision.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace qlag::harness {

/// Names accepted by evaluate(): theta, qpoch, e-symbol, e-factorial, schur,
/// interp, transition-det, vandiejen-product, wronskian-closed, jackson.
const std::vector<std::string>& eval_kinds();

/// Evaluates one library quantity. `inputs` maps argument names to strings
/// (or arrays of strings): complex values are "re" or "re,im", lists separate
/// their elements with ';' and integer lists use ','. Throws ConfigError on
/// unknown kinds and missing or malformed arguments.
Complex evaluate(std::string_view kind, const nlohmann::json& inputs, const PrecisionContext& ctx);

/// Turns "key=value" command-line arguments into an inputs object.
nlohmann::json parse_assignments(const std::vector<std::string>& args);

}  // namespace qlag::harness
