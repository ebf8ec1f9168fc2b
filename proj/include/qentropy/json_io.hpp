#pragma once

#include <string>

#include <json.hpp>

namespace qentropy {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number printed to 17 significant
/// digits (round-trip exact). indent < 0 gives a single line.
std::string dump_json(const Json& doc, int indent = -1);

/// Formats one double the same way dump_json does.
std::string format_number(double x);

}  // namespace qentropy
