#include "model/codebook.hpp"

#include <charconv>

#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace codesat::model {

namespace {

int parse_int_field(const std::string& s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError(std::string("csv: bad ") + what + " value: '" + s + "'");
  }
  return v;
}

size_t parse_size_field(const std::string& s, const char* what) {
  int v = parse_int_field(s, what);
  if (v < 0) throw InputError(std::string("csv: negative ") + what + ": " + s);
  return static_cast<size_t>(v);
}

}  // namespace

void validate_code(const InitialCode& code, std::vector<std::string>* warnings) {
  if (util::trim(code.name).empty()) throw InputError("code name is empty");
  if (util::trim(code.description).empty()) {
    throw InputError("code description is empty (code '" + code.name + "')");
  }
  if (!warnings) return;
  if (util::word_count(code.name) > kNameWordTarget) {
    warnings->push_back("code name exceeds " + std::to_string(kNameWordTarget) +
                        " words: '" + code.name + "'");
  }
  if (util::word_count(code.description) > kDescriptionWordTarget) {
    warnings->push_back("description exceeds " + std::to_string(kDescriptionWordTarget) +
                        " words for code '" + code.name + "'");
  }
  if (util::word_count(code.quote) > kQuoteWordTarget) {
    warnings->push_back("quote exceeds " + std::to_string(kQuoteWordTarget) +
                        " words for code '" + code.name + "'");
  }
  if (util::trim(code.quote).empty()) {
    warnings->push_back("code '" + code.name + "' has an empty quote");
  }
}

std::string code_key(const InitialCode& code) {
  return util::normalize_code_key(code.name, code.description);
}

std::string code_pair_text(const InitialCode& code) {
  return util::trim(code.name) + ". " + util::trim(code.description);
}

TotalCumulativeCodebook TotalCumulativeCodebook::from_code_sets(
    const std::vector<InterviewCodeSet>& sets) {
  TotalCumulativeCodebook tcc;
  size_t running = 0;
  for (const auto& set : sets) {
    for (const auto& code : set.codes) {
      tcc.entries.push_back({code, {set.interview_id, set.position}});
    }
    running += set.codes.size();
    tcc.cumulative_total_at.push_back({set.position, running, 0});
  }
  return tcc;
}

void UniqueCumulativeCodebook::append_unique(const InitialCode& code, const SourceRef& source) {
  entries_.push_back({code, source});
}

void UniqueCumulativeCodebook::record_duplicate(const InitialCode& code,
                                                std::optional<size_t> matched_index,
                                                int position,
                                                std::optional<std::string> rationale) {
  if (matched_index && *matched_index >= entries_.size()) {
    throw InputError("duplicate record references unique index " +
                     std::to_string(*matched_index) + " but codebook has " +
                     std::to_string(entries_.size()) + " entries");
  }
  duplicates_.push_back({code, matched_index, position, std::move(rationale)});
}

const std::vector<std::string> kCodesCsvHeader = {"interview_id", "position", "name",
                                                  "description", "quote"};
const std::vector<std::string> kDuplicatesCsvHeader = {
    "position", "name", "description", "matched_unique_name", "matched_unique_index",
    "rationale"};
const std::vector<std::string> kCountsCsvHeader = {"position", "cumulative_total",
                                                   "cumulative_unique"};

void write_codes_csv(const std::string& path, const InterviewCodeSet& set) {
  std::vector<util::CsvRow> rows;
  rows.reserve(set.codes.size());
  for (const auto& code : set.codes) {
    rows.push_back({set.interview_id, std::to_string(set.position), code.name,
                    code.description, code.quote});
  }
  util::csv_write(path, kCodesCsvHeader, rows);
}

InterviewCodeSet read_codes_csv(const std::string& path) {
  auto rows = util::csv_read_with_header(path, kCodesCsvHeader);
  if (rows.empty()) throw InputError("codes csv has no rows: " + path);
  InterviewCodeSet set;
  for (const auto& row : rows) {
    if (row.size() != 5) throw InputError("codes csv row width != 5 in " + path);
    if (set.codes.empty()) {
      set.interview_id = row[0];
      set.position = parse_int_field(row[1], "position");
    } else if (set.interview_id != row[0]) {
      throw InputError("codes csv mixes interview ids in " + path);
    }
    set.codes.push_back({row[2], row[3], row[4]});
  }
  return set;
}

void write_unique_codebook_csv(const std::string& path, const UniqueCumulativeCodebook& ucc) {
  std::vector<util::CsvRow> rows;
  rows.reserve(ucc.entries().size());
  for (const auto& entry : ucc.entries()) {
    rows.push_back({entry.source.interview_id, std::to_string(entry.source.position),
                    entry.code.name, entry.code.description, entry.code.quote});
  }
  util::csv_write(path, kCodesCsvHeader, rows);
}

std::vector<CodebookEntry> read_unique_codebook_csv(const std::string& path) {
  auto rows = util::csv_read_with_header(path, kCodesCsvHeader);
  std::vector<CodebookEntry> entries;
  entries.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 5) throw InputError("codebook csv row width != 5 in " + path);
    entries.push_back({{row[2], row[3], row[4]}, {row[0], parse_int_field(row[1], "position")}});
  }
  return entries;
}

void write_duplicates_csv(const std::string& path, const UniqueCumulativeCodebook& ucc) {
  std::vector<util::CsvRow> rows;
  rows.reserve(ucc.duplicates().size());
  for (const auto& rec : ucc.duplicates()) {
    std::string matched_name;
    std::string matched_index;
    if (rec.matched_unique_index) {
      matched_name = ucc.entries()[*rec.matched_unique_index].code.name;
      matched_index = std::to_string(*rec.matched_unique_index);
    }
    rows.push_back({std::to_string(rec.position), rec.duplicate.name, rec.duplicate.description,
                    matched_name, matched_index, rec.rationale.value_or("")});
  }
  util::csv_write(path, kDuplicatesCsvHeader, rows);
}

void write_counts_csv(const std::string& path, const std::vector<PositionCount>& counts) {
  std::vector<util::CsvRow> rows;
  rows.reserve(counts.size());
  for (const auto& c : counts) {
    rows.push_back({std::to_string(c.position), std::to_string(c.cumulative_total),
                    std::to_string(c.cumulative_unique)});
  }
  util::csv_write(path, kCountsCsvHeader, rows);
}

std::vector<PositionCount> read_counts_csv(const std::string& path) {
  auto rows = util::csv_read_with_header(path, kCountsCsvHeader);
  std::vector<PositionCount> counts;
  counts.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 3) throw InputError("counts csv row width != 3 in " + path);
    counts.push_back({parse_int_field(row[0], "position"),
                      parse_size_field(row[1], "cumulative_total"),
                      parse_size_field(row[2], "cumulative_unique")});
  }
  return counts;
}

}  // namespace codesat::model
