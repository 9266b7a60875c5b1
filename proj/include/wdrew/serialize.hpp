#pragma once

#include <string>

#include <json.hpp>

#include "wdrew/oracle.hpp"

namespace wdrew {

using Json = nlohmann::ordered_json;

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);

Json interpretation_to_json(const Interpretation& m);
Interpretation interpretation_from_json(const Json& j);

Json bounds_to_json(const Bounds& b);
Bounds bounds_from_json(const Json& j);

// FNV-1a 64-bit over the raw bytes; used to detect stale deployed artifacts.
std::string content_hash(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace wdrew
