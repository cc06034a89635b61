#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace codesat::model {

// One initial code: a short label, a ~30-word description and a supporting
// participant quote. Identity for duplicate purposes is the (name,
// description) pair; the quote is carried through but never judged.
struct InitialCode {
  std::string name;
  std::string description;
  std::string quote;

  bool operator==(const InitialCode&) const = default;
};

// Soft length targets. Violations are reported as warnings, never rejections.
inline constexpr size_t kNameWordTarget = 5;
inline constexpr size_t kDescriptionWordTarget = 30;
inline constexpr size_t kQuoteWordTarget = 40;

// Checks hard invariants (throws InputError) and collects soft-target
// warnings into `warnings` when non-null.
void validate_code(const InitialCode& code, std::vector<std::string>* warnings);

std::string code_key(const InitialCode& code);  // normalized identity key

// "Name. Description" — the text form both judges and the embedder consume.
std::string code_pair_text(const InitialCode& code);

struct InterviewCodeSet {
  std::string interview_id;
  int position = 0;  // 1-based ordinal within the analysis sequence
  std::vector<InitialCode> codes;
};

struct SourceRef {
  std::string interview_id;
  int position = 0;

  bool operator==(const SourceRef&) const = default;
};

struct CodebookEntry {
  InitialCode code;
  SourceRef source;

  bool operator==(const CodebookEntry&) const = default;
};

struct PositionCount {
  int position = 0;
  size_t cumulative_total = 0;
  size_t cumulative_unique = 0;

  bool operator==(const PositionCount&) const = default;
};

// Ordered concatenation of every code produced across the analysis sequence,
// duplicates included.
struct TotalCumulativeCodebook {
  std::vector<CodebookEntry> entries;
  std::vector<PositionCount> cumulative_total_at;  // cumulative_unique unset here

  static TotalCumulativeCodebook from_code_sets(const std::vector<InterviewCodeSet>& sets);
};

struct DuplicateRecord {
  InitialCode duplicate;
  // Index into UCC entries at match time. Absent for the whole-list judge,
  // which reports a match without identifying the entry.
  std::optional<size_t> matched_unique_index;
  int position = 0;
  std::optional<std::string> rationale;

  bool operator==(const DuplicateRecord&) const = default;
};

// Append-only deduplicated codebook. Entries never get removed or reordered
// during a reduction; every discarded code lands in `duplicates`.
class UniqueCumulativeCodebook {
 public:
  const std::vector<CodebookEntry>& entries() const { return entries_; }
  const std::vector<DuplicateRecord>& duplicates() const { return duplicates_; }

  void append_unique(const InitialCode& code, const SourceRef& source);

  // matched_index, when present, must reference an existing entry.
  void record_duplicate(const InitialCode& code, std::optional<size_t> matched_index,
                        int position, std::optional<std::string> rationale);

  bool operator==(const UniqueCumulativeCodebook&) const = default;

 private:
  std::vector<CodebookEntry> entries_;
  std::vector<DuplicateRecord> duplicates_;
};

// CSV schemas (UTF-8, header row).
extern const std::vector<std::string> kCodesCsvHeader;       // interview_id,position,name,description,quote
extern const std::vector<std::string> kDuplicatesCsvHeader;  // position,name,description,matched_unique_name,matched_unique_index,rationale
extern const std::vector<std::string> kCountsCsvHeader;      // position,cumulative_total,cumulative_unique

void write_codes_csv(const std::string& path, const InterviewCodeSet& set);
InterviewCodeSet read_codes_csv(const std::string& path);

void write_unique_codebook_csv(const std::string& path, const UniqueCumulativeCodebook& ucc);
std::vector<CodebookEntry> read_unique_codebook_csv(const std::string& path);

void write_duplicates_csv(const std::string& path, const UniqueCumulativeCodebook& ucc);

void write_counts_csv(const std::string& path, const std::vector<PositionCount>& counts);
std::vector<PositionCount> read_counts_csv(const std::string& path);

}  // namespace codesat::model
