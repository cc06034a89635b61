#include "util/jsonx.hpp"

#include <stdexcept>

#include "util/errors.hpp"
#include "util/strings.hpp"

namespace codesat::util {

std::string strip_code_fences(std::string_view text) {
  std::string t = trim(text);
  if (!starts_with(t, "```")) return t;
  size_t first_nl = t.find('\n');
  if (first_nl == std::string::npos) return t;
  // Opening fence line may carry a language tag; drop the whole line.
  std::string body = t.substr(first_nl + 1);
  size_t closing = body.rfind("```");
  if (closing == std::string::npos) return trim(body);
  return trim(body.substr(0, closing));
}

std::optional<std::string> extract_first_json_object(std::string_view text) {
  size_t start = text.find('{');
  if (start == std::string_view::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '{': ++depth; break;
      case '}':
        --depth;
        if (depth == 0) return std::string(text.substr(start, i - start + 1));
        break;
      default: break;
    }
  }
  return std::nullopt;
}

nlohmann::json parse_first_json_object(std::string_view text) {
  std::string stripped = strip_code_fences(text);
  auto slice = extract_first_json_object(stripped);
  if (!slice) throw std::runtime_error("no JSON object found in response");
  return nlohmann::json::parse(*slice);
}

nlohmann::json load_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const nlohmann::json& j, int indent) {
  write_file(path, j.dump(indent) + "\n");
}

}  // namespace codesat::util
