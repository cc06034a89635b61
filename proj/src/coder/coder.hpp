#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gateway/gateway.hpp"
#include "model/codebook.hpp"

namespace codesat::coder {

// A named analysis order. `order` lists 1-based corpus indices; it must be a
// permutation of 1..n.
struct AnalysisSequence {
  std::string name;
  std::vector<int> order;
};

void validate_sequence(const AnalysisSequence& seq, size_t corpus_size);

AnalysisSequence identity_sequence(size_t n);
AnalysisSequence reverse_sequence(size_t n);
// The two published 12-interview comparison orders. n must be 12.
AnalysisSequence constantinou_s3();
AnalysisSequence constantinou_s4();
std::vector<AnalysisSequence> builtin_sequences(size_t n);

struct Transcript {
  std::string interview_id;
  std::string text;
};

// Corpus input: either a manifest CSV `interview_id,path` or a directory of
// *.txt transcripts (id = file stem, sorted by name).
std::vector<Transcript> load_corpus_manifest(const std::string& manifest_csv_path);
std::vector<Transcript> load_corpus_directory(const std::string& dir_path);

// Renders the initial-coding prompt: instructions asking for `max_codes`
// codes with name/description/quote, JSON output under 'Codes', then the
// whole transcript inside a fenced block.
std::string build_coding_prompt(const std::string& transcript, int max_codes);

struct ParsedCodeSet {
  model::InterviewCodeSet set;
  std::vector<std::string> warnings;
};

// Extracts the first JSON object (code fences tolerated), reads the `Codes`
// array, accepts common key-casing variants for name/description/quote.
// Elements missing name or description are skipped with a warning.
ParsedCodeSet parse_code_set(const std::string& raw, const std::string& interview_id,
                             int position, int requested_codes);

struct CodeCorpusOptions {
  int max_codes = 15;
  int max_concurrency = 1;
  std::function<void(const std::string&)> warn;  // optional warning sink
};

// Codes each interview independently (fresh prompt, no carried context) in
// the order given by `sequence`. Results come back ordered by position.
std::vector<model::InterviewCodeSet> code_corpus(const std::vector<Transcript>& corpus,
                                                 const AnalysisSequence& sequence,
                                                 const llm::LmClient& lm,
                                                 const CodeCorpusOptions& options);

}  // namespace codesat::coder
