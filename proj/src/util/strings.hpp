#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace codesat::util {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Collapses any run of whitespace to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Canonical identity key used for exact-duplicate detection: lowercased,
// whitespace-collapsed "name description".
std::string normalize_code_key(std::string_view name, std::string_view description);

size_t word_count(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
bool contains_ci(std::string_view haystack, std::string_view needle);

std::vector<std::string> split(std::string_view s, char sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace codesat::util
