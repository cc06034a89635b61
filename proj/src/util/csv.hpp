#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace codesat::util {

using CsvRow = std::vector<std::string>;

// Minimal RFC-4180 CSV. Fields containing comma, quote, CR or LF are quoted;
// embedded quotes are doubled. Rows end with '\n'.
std::string csv_escape(std::string_view field);
std::string csv_join(const CsvRow& row);

// Parses a whole document. Handles quoted fields with embedded separators and
// newlines. A trailing newline does not produce an empty row.
std::vector<CsvRow> csv_parse(std::string_view text);

// Reads a CSV file and checks the header row matches exactly.
std::vector<CsvRow> csv_read_with_header(const std::string& path, const CsvRow& expected_header);

void csv_write(const std::string& path, const CsvRow& header, const std::vector<CsvRow>& rows);

}  // namespace codesat::util
