#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace codesat::util {

// Drops a leading/trailing markdown code fence (``` or ```lang) if the whole
// payload is wrapped in one.
std::string strip_code_fences(std::string_view text);

// Returns the first balanced top-level JSON object found in the text, or
// nullopt. Brace matching is string- and escape-aware; the extracted slice is
// then parsed strictly by the caller.
std::optional<std::string> extract_first_json_object(std::string_view text);

// Convenience: fence-strip, locate, and strictly parse the first JSON object.
// Throws nlohmann::json::exception on malformed content and
// std::runtime_error when no object is present.
nlohmann::json parse_first_json_object(std::string_view text);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j, int indent = 2);

}  // namespace codesat::util
