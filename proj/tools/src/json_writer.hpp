#pragma once

#include <string>

#include <json.hpp>

namespace skewjensen::cli {

/// Serializes like nlohmann::json::dump(2) but prints floating-point numbers
/// with 17 significant digits; non-finite values become the strings "inf",
/// "-inf", "nan".
std::string dump_json(const nlohmann::json& j);

}  // namespace skewjensen::cli
