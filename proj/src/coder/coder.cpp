#include "coder/coder.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

namespace codesat::coder {

namespace fs = std::filesystem;

void validate_sequence(const AnalysisSequence& seq, size_t corpus_size) {
  if (seq.order.size() != corpus_size) {
    throw ConfigError("sequence '" + seq.name + "' has " + std::to_string(seq.order.size()) +
                      " entries for a corpus of " + std::to_string(corpus_size));
  }
  std::vector<bool> seen(corpus_size, false);
  for (int idx : seq.order) {
    if (idx < 1 || static_cast<size_t>(idx) > corpus_size || seen[static_cast<size_t>(idx) - 1]) {
      throw ConfigError("sequence '" + seq.name + "' is not a permutation of 1.." +
                        std::to_string(corpus_size));
    }
    seen[static_cast<size_t>(idx) - 1] = true;
  }
}

AnalysisSequence identity_sequence(size_t n) {
  AnalysisSequence s{"identity", std::vector<int>(n)};
  std::iota(s.order.begin(), s.order.end(), 1);
  return s;
}

AnalysisSequence reverse_sequence(size_t n) {
  AnalysisSequence s{"reverse", std::vector<int>(n)};
  for (size_t i = 0; i < n; ++i) s.order[i] = static_cast<int>(n - i);
  return s;
}

AnalysisSequence constantinou_s3() {
  return {"constantinou-s3", {6, 10, 9, 4, 12, 11, 7, 8, 1, 2, 3, 5}};
}

AnalysisSequence constantinou_s4() {
  return {"constantinou-s4", {4, 2, 1, 11, 10, 7, 12, 9, 6, 3, 5, 8}};
}

std::vector<AnalysisSequence> builtin_sequences(size_t n) {
  std::vector<AnalysisSequence> out{identity_sequence(n), reverse_sequence(n)};
  if (n == 12) {
    out.push_back(constantinou_s3());
    out.push_back(constantinou_s4());
  }
  return out;
}

std::vector<Transcript> load_corpus_manifest(const std::string& manifest_csv_path) {
  auto rows = util::csv_read_with_header(manifest_csv_path, {"interview_id", "path"});
  if (rows.empty()) throw ConfigError("corpus manifest has no rows: " + manifest_csv_path);
  fs::path base = fs::path(manifest_csv_path).parent_path();
  std::vector<Transcript> corpus;
  corpus.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 2) throw ConfigError("corpus manifest row width != 2");
    fs::path p(row[1]);
    if (p.is_relative()) p = base / p;
    corpus.push_back({row[0], util::read_file(p.string())});
  }
  return corpus;
}

std::vector<Transcript> load_corpus_directory(const std::string& dir_path) {
  if (!fs::is_directory(dir_path)) throw ConfigError("corpus directory not found: " + dir_path);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir_path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .txt transcripts in " + dir_path);
  std::vector<Transcript> corpus;
  corpus.reserve(files.size());
  for (const auto& f : files) corpus.push_back({f.stem().string(), util::read_file(f.string())});
  return corpus;
}

std::string build_coding_prompt(const std::string& transcript, int max_codes) {
  if (util::trim(transcript).empty()) throw InputError("transcript is empty");
  if (max_codes < 1) throw InputError("max_codes must be >= 1");
  std::string prompt;
  prompt += "Can you assist me in the generation of initial codes to assist me with my "
            "thematic analysis. Identify the " + std::to_string(max_codes) +
            " most relevant initial codes in the text, provide a meaningful name for each "
            "code in no more than 5 words, 30 words simple description of the code, and a "
            "max 40 words quote from the participant.\n";
  prompt += "Format the response as a json file keeping names, descriptions and quotes "
            "together in the json, and keep them together in 'Codes'.\n\n";
  prompt += "```" + transcript + "```\n";
  return prompt;
}

namespace {

const nlohmann::json* find_key_ci(const nlohmann::json& obj, const char* key) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (util::to_lower(it.key()) == key) return &it.value();
  }
  return nullptr;
}

std::string string_field(const nlohmann::json& obj, const char* key) {
  const nlohmann::json* v = find_key_ci(obj, key);
  if (!v) return "";
  if (v->is_string()) return v->get<std::string>();
  if (v->is_null()) return "";
  return v->dump();
}

}  // namespace

ParsedCodeSet parse_code_set(const std::string& raw, const std::string& interview_id,
                             int position, int requested_codes) {
  if (util::trim(raw).empty()) {
    throw ProviderContentError("empty coding response for interview " + interview_id);
  }
  nlohmann::json obj;
  try {
    obj = util::parse_first_json_object(raw);
  } catch (const std::exception& e) {
    throw ProviderContentError("cannot parse coding response for interview " + interview_id +
                               ": " + e.what() + "; raw: " + raw.substr(0, 512));
  }
  const nlohmann::json* codes = find_key_ci(obj, "codes");
  if (!codes || !codes->is_array()) {
    throw ProviderContentError("coding response for interview " + interview_id +
                               " lacks a 'Codes' array; raw: " + raw.substr(0, 512));
  }
  if (codes->empty()) {
    throw ProviderContentError("coding response for interview " + interview_id +
                               " has an empty 'Codes' array");
  }

  ParsedCodeSet out;
  out.set.interview_id = interview_id;
  out.set.position = position;
  for (const auto& element : *codes) {
    if (!element.is_object()) {
      out.warnings.push_back("skipping non-object element under 'Codes'");
      continue;
    }
    model::InitialCode code{string_field(element, "name"), string_field(element, "description"),
                            string_field(element, "quote")};
    if (util::trim(code.name).empty() || util::trim(code.description).empty()) {
      out.warnings.push_back("skipping element missing name or description in interview " +
                             interview_id);
      continue;
    }
    model::validate_code(code, &out.warnings);
    out.set.codes.push_back(std::move(code));
  }
  if (out.set.codes.empty()) {
    throw ProviderContentError("all code elements were invalid for interview " + interview_id);
  }
  if (requested_codes > 0 &&
      out.set.codes.size() > static_cast<size_t>(requested_codes)) {
    out.warnings.push_back("interview " + interview_id + " returned " +
                           std::to_string(out.set.codes.size()) + " codes, " +
                           std::to_string(requested_codes) + " requested; keeping all");
  }
  return out;
}

std::vector<model::InterviewCodeSet> code_corpus(const std::vector<Transcript>& corpus,
                                                 const AnalysisSequence& sequence,
                                                 const llm::LmClient& lm,
                                                 const CodeCorpusOptions& options) {
  validate_sequence(sequence, corpus.size());
  const size_t n = corpus.size();
  std::vector<model::InterviewCodeSet> results(n);
  std::vector<std::vector<std::string>> warnings(n);
  std::vector<std::string> failures(n);

  auto run_one = [&](size_t k) {
    const Transcript& t = corpus[static_cast<size_t>(sequence.order[k]) - 1];
    try {
      std::string prompt = build_coding_prompt(t.text, options.max_codes);
      llm::CompletionResponse resp = lm.complete(std::move(prompt));
      ParsedCodeSet parsed =
          parse_code_set(resp.text, t.interview_id, static_cast<int>(k) + 1, options.max_codes);
      results[k] = std::move(parsed.set);
      warnings[k] = std::move(parsed.warnings);
    } catch (const Error& e) {
      failures[k] = e.what();
    } catch (const std::exception& e) {
      failures[k] = std::string("unexpected: ") + e.what();
    }
  };

  int workers = std::max(1, std::min<int>(options.max_concurrency, static_cast<int>(n)));
  if (workers == 1) {
    for (size_t k = 0; k < n; ++k) run_one(k);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) run_one(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (size_t k = 0; k < n; ++k) {
    if (!failures[k].empty()) {
      throw ProviderContentError("coding failed at position " + std::to_string(k + 1) +
                                 " (interview " +
                                 corpus[static_cast<size_t>(sequence.order[k]) - 1].interview_id +
                                 "): " + failures[k]);
    }
    if (options.warn) {
      for (const auto& w : warnings[k]) options.warn(w);
    }
  }
  return results;
}

}  // namespace codesat::coder
