#pragma once

#include <json.hpp>

#include "brannulus/analysis.hpp"

namespace brannulus {

inline constexpr int kSchemaVersion = 1;

/// Complex numbers are [re, im] pairs; permutations carry both the image list
/// (0-based) and 1-based cycle notation.
nlohmann::json report_json(const Analysis& a);

nlohmann::json checks_json(const std::vector<Check>& checks);

/// Like json::dump(2), but floating-point numbers use 17 significant digits.
std::string dump_json(const nlohmann::json& j);

/// Accepts {"coefficients": [...]} (ascending) or {"leading": z, "roots": [...]},
/// where each number is [re, im] or a real. Throws std::invalid_argument or Error.
Polynomial polynomial_from_json(const nlohmann::json& input);

}  // namespace brannulus
