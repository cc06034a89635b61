#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codesat::compiler {

enum class MeaningLabel { similar, different };

inline constexpr const char* kSimilarPhrase = "the two texts have a similar meaning";
inline constexpr const char* kDifferentPhrase = "the two texts have a different meaning";

inline constexpr const char* kSignatureInstructions =
    "Given the fields `text_1`, `text_2`, produce the fields `meaning`.";

const char* meaning_phrase(MeaningLabel label);

// Accepts the two canonical phrases or the bare words "similar"/"different".
// Anything else is a validation error.
MeaningLabel parse_meaning_label(const std::string& text);

// One labeled comparison: two "Name. Description" texts and whether they
// convey the same meaning. Bootstrapped demos additionally carry the
// teacher's rationale and are flagged augmented.
struct MeaningExample {
  std::string text_1;
  std::string text_2;
  MeaningLabel meaning = MeaningLabel::different;
  std::optional<std::string> rationale;
  bool augmented = false;

  bool operator==(const MeaningExample&) const = default;
};

struct ExampleBank {
  std::vector<MeaningExample> examples;

  size_t count(MeaningLabel label) const;
};

// Bank file: JSON array of {text_1, text_2, meaning}. Both labels must occur.
ExampleBank load_example_bank(const std::string& path);

struct CompileMetadata {
  std::string teacher_model_id;
  int num_candidates = 0;
  // Stored so the recorded validation score can be re-checked against the
  // exact split it was computed on.
  std::vector<MeaningExample> validation_split;

  bool operator==(const CompileMetadata&) const = default;
};

// The serialized few-shot program: instructions, answer prefix and an ordered
// demo list (augmented demos first, carrying rationales).
struct CompiledJudgePrompt {
  std::string signature_instructions;
  std::string answer_prefix = "Meaning:";
  std::vector<MeaningExample> demos;
  std::optional<double> validation_score;  // in [0,1] when compiled
  std::optional<int64_t> compile_seed;
  std::optional<CompileMetadata> metadata;

  bool operator==(const CompiledJudgePrompt&) const = default;
};

// File layout: a top-level "generate_answer" program object (demos,
// signature_instructions, signature_prefix) with compile metadata alongside.
void save_compiled_prompt(const std::string& path, const CompiledJudgePrompt& prompt);
CompiledJudgePrompt load_compiled_prompt(const std::string& path);

std::string compiled_prompt_to_json(const CompiledJudgePrompt& prompt);
CompiledJudgePrompt compiled_prompt_from_json(const std::string& json_text);

}  // namespace codesat::compiler
