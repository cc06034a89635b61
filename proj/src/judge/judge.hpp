#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "compiler/prompt.hpp"
#include "gateway/gateway.hpp"
#include "model/codebook.hpp"

namespace codesat::judge {

struct JudgeVerdict {
  bool is_duplicate = false;
  // Present iff is_duplicate and the judge identifies the matching entry
  // (pairwise mode); the whole-list prompt cannot.
  std::optional<size_t> matched_unique_index;
  std::optional<std::string> rationale;
  std::string raw_response;
};

// "Is this code a duplicate of anything in the unique codebook?"
// Implementations are stateless between calls; a reduction invokes them
// strictly sequentially because the codebook evolves under them.
class DuplicateJudge {
 public:
  virtual ~DuplicateJudge() = default;
  virtual JudgeVerdict is_duplicate(const model::InitialCode& code,
                                    const model::UniqueCumulativeCodebook& ucc) = 0;
  virtual std::string mode_name() const = 0;
};

// Builds the whole-list duplicate prompt: the candidate "Name. Description"
// pair as `value`, the unique entries joined as `combined_unique`, asking for
// JSON with key value_in_combined_unique.
std::string build_list_judge_prompt(const model::InitialCode& code,
                                    const model::UniqueCumulativeCodebook& ucc);

// One gateway call per candidate. The response must carry the key
// value_in_combined_unique with a recognizable truth value; anything else is
// a judge contract violation and aborts the run.
class ZeroShotJudge final : public DuplicateJudge {
 public:
  explicit ZeroShotJudge(llm::LmClient lm) : lm_(std::move(lm)) {}
  JudgeVerdict is_duplicate(const model::InitialCode& code,
                            const model::UniqueCumulativeCodebook& ucc) override;
  std::string mode_name() const override { return "zero-shot"; }

 private:
  llm::LmClient lm_;
};

// Renders the compiled few-shot program for one pair: signature
// instructions, a format stanza, every stored demo in order (augmented demos
// as worked examples with their rationales), then the query with the answer
// prefix left open. Pure function of its inputs.
std::string render_pair_prompt(const compiler::CompiledJudgePrompt& compiled,
                               const std::string& text_1, const std::string& text_2);

// Variant used when bootstrapping demos: ends with the reasoning prefix so
// the teacher writes a rationale before the labeled answer.
std::string render_pair_prompt_for_teacher(const compiler::CompiledJudgePrompt& compiled,
                                           const std::string& text_1, const std::string& text_2);

inline constexpr const char* kReasoningPrefix = "Reasoning: Let's think step by step in order to";

// Scans the text after the final "Meaning:" marker (whole text when absent)
// for exactly one of the two label phrases.
compiler::MeaningLabel parse_meaning(const std::string& raw);

// Pairwise strategy: compares the candidate against unique entries oldest
// first and stops at the first similar verdict.
class CompiledPairwiseJudge final : public DuplicateJudge {
 public:
  CompiledPairwiseJudge(compiler::CompiledJudgePrompt compiled, llm::LmClient lm)
      : compiled_(std::move(compiled)), lm_(std::move(lm)) {}
  JudgeVerdict is_duplicate(const model::InitialCode& code,
                            const model::UniqueCumulativeCodebook& ucc) override;
  std::string mode_name() const override { return "compiled"; }

  const compiler::CompiledJudgePrompt& compiled() const { return compiled_; }

 private:
  compiler::CompiledJudgePrompt compiled_;
  llm::LmClient lm_;
};

// Test/degenerate judges. `lookup` maps a candidate's normalized key to the
// normalized key of the unique entry it duplicates; candidates absent from
// the table (or whose target is not yet in the codebook) are unique.
class StubJudge final : public DuplicateJudge {
 public:
  static std::unique_ptr<StubJudge> always_similar();
  static std::unique_ptr<StubJudge> always_different();
  static std::unique_ptr<StubJudge> lookup_table(
      std::function<std::optional<std::string>(const std::string& candidate_key)> lookup);
  static std::unique_ptr<StubJudge> from_lookup_file(const std::string& path);

  JudgeVerdict is_duplicate(const model::InitialCode& code,
                            const model::UniqueCumulativeCodebook& ucc) override;
  std::string mode_name() const override { return name_; }

 private:
  enum class Kind { similar, different, lookup };
  StubJudge(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::function<std::optional<std::string>(const std::string&)> lookup_;
};

// Wraps a deterministic pairwise predicate as a judge (early-exit scan, same
// shape as the compiled judge). Reduction property tests drive this against
// the brute-force fold oracle.
class PairwiseFunctionJudge final : public DuplicateJudge {
 public:
  using Predicate =
      std::function<bool(const model::InitialCode& candidate, const model::InitialCode& entry)>;
  explicit PairwiseFunctionJudge(Predicate pred) : pred_(std::move(pred)) {}
  JudgeVerdict is_duplicate(const model::InitialCode& code,
                            const model::UniqueCumulativeCodebook& ucc) override;
  std::string mode_name() const override { return "stub:function"; }

 private:
  Predicate pred_;
};

}  // namespace codesat::judge
