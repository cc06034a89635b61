#include "judge/judge.hpp"

#include <map>

#include <json.hpp>

#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

namespace codesat::judge {

using compiler::MeaningLabel;

std::string build_list_judge_prompt(const model::InitialCode& code,
                                    const model::UniqueCumulativeCodebook& ucc) {
  if (ucc.entries().empty()) throw InputError("list judge needs a non-empty unique codebook");
  std::string combined;
  for (size_t i = 0; i < ucc.entries().size(); ++i) {
    if (i) combined += " , ";
    combined += model::code_pair_text(ucc.entries()[i].code);
  }
  std::string prompt;
  prompt += "Then, determine if value: ```" + model::code_pair_text(code) +
            "``` conveys a resembling idea or meaning to any element in the list "
            "combined_unique: " + combined + ".\n";
  prompt += "Your response should be either a string 'true' (Similar idea or meaning) or a "
            "string 'false' (no similarity).\n";
  prompt += "Format the response as a json file using the key value_in_combined_unique\n";
  return prompt;
}

namespace {

bool parse_truth_value(const nlohmann::json& v, const std::string& raw) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    std::string s = util::to_lower(util::trim(v.get<std::string>()));
    if (s == "true") return true;
    if (s == "false") return false;
  }
  throw JudgeContractError("list judge returned an unrecognizable truth value; raw: " +
                           raw.substr(0, 256));
}

}  // namespace

JudgeVerdict ZeroShotJudge::is_duplicate(const model::InitialCode& code,
                                         const model::UniqueCumulativeCodebook& ucc) {
  std::string prompt = build_list_judge_prompt(code, ucc);
  llm::CompletionResponse resp = lm_.complete(std::move(prompt));
  nlohmann::json obj;
  try {
    obj = util::parse_first_json_object(resp.text);
  } catch (const std::exception& e) {
    throw JudgeContractError(std::string("list judge response is not JSON: ") + e.what() +
                             "; raw: " + resp.text.substr(0, 256));
  }
  if (!obj.contains("value_in_combined_unique")) {
    throw JudgeContractError("list judge response lacks key value_in_combined_unique; raw: " +
                             resp.text.substr(0, 256));
  }
  bool dup = parse_truth_value(obj["value_in_combined_unique"], resp.text);
  return {dup, std::nullopt, std::nullopt, resp.text};
}

namespace {

// The fixed format stanza shown before the demos.
std::string format_stanza(const std::string& answer_prefix) {
  std::string s;
  s += "Follow the following format.\n\n";
  s += "Text 1: ${text_1}\n";
  s += "Text 2: ${text_2}\n";
  s += std::string(kReasoningPrefix) + " ${produce the meaning}. We ...\n";
  s += answer_prefix + " ${meaning}\n";
  return s;
}

std::string demo_block(const compiler::MeaningExample& demo, const std::string& answer_prefix) {
  std::string s;
  s += "Text 1: " + demo.text_1 + "\n";
  s += "Text 2: " + demo.text_2 + "\n";
  if (demo.augmented && demo.rationale) {
    s += std::string(kReasoningPrefix) + " " + *demo.rationale + "\n";
  }
  s += answer_prefix + " " + compiler::meaning_phrase(demo.meaning) + "\n";
  return s;
}

std::string render_pair_prompt_impl(const compiler::CompiledJudgePrompt& compiled,
                                    const std::string& text_1, const std::string& text_2,
                                    bool open_reasoning) {
  if (util::trim(text_1).empty() || util::trim(text_2).empty()) {
    throw InputError("pair prompt texts must be non-empty");
  }
  std::string s = compiled.signature_instructions + "\n\n---\n\n";
  s += format_stanza(compiled.answer_prefix);
  for (const auto& demo : compiled.demos) {
    s += "\n---\n\n";
    s += demo_block(demo, compiled.answer_prefix);
  }
  s += "\n---\n\n";
  s += "Text 1: " + text_1 + "\n";
  s += "Text 2: " + text_2 + "\n";
  if (open_reasoning) {
    s += std::string(kReasoningPrefix);
  } else {
    s += compiled.answer_prefix;
  }
  return s;
}

}  // namespace

std::string render_pair_prompt(const compiler::CompiledJudgePrompt& compiled,
                               const std::string& text_1, const std::string& text_2) {
  return render_pair_prompt_impl(compiled, text_1, text_2, false);
}

std::string render_pair_prompt_for_teacher(const compiler::CompiledJudgePrompt& compiled,
                                           const std::string& text_1,
                                           const std::string& text_2) {
  return render_pair_prompt_impl(compiled, text_1, text_2, true);
}

MeaningLabel parse_meaning(const std::string& raw) {
  if (util::trim(raw).empty()) throw JudgeContractError("pair judge returned an empty response");
  std::string_view scan(raw);
  size_t marker = raw.rfind("Meaning:");
  if (marker != std::string::npos) scan = scan.substr(marker + 8);
  bool similar = util::contains_ci(scan, "similar meaning");
  bool different = util::contains_ci(scan, "different meaning");
  if (similar == different) {
    throw JudgeContractError(std::string("pair judge response must contain exactly one of the "
                                         "meaning phrases; raw: ") +
                             raw.substr(0, 256));
  }
  return similar ? MeaningLabel::similar : MeaningLabel::different;
}

JudgeVerdict CompiledPairwiseJudge::is_duplicate(const model::InitialCode& code,
                                                 const model::UniqueCumulativeCodebook& ucc) {
  const std::string candidate_text = model::code_pair_text(code);
  for (size_t i = 0; i < ucc.entries().size(); ++i) {
    const std::string entry_text = model::code_pair_text(ucc.entries()[i].code);
    std::string prompt = render_pair_prompt(compiled_, entry_text, candidate_text);
    llm::CompletionResponse resp = lm_.complete(std::move(prompt));
    MeaningLabel label = parse_meaning(resp.text);
    if (label == MeaningLabel::similar) {
      std::string rationale;
      size_t marker = resp.text.rfind("Meaning:");
      if (marker != std::string::npos) rationale = util::trim(resp.text.substr(0, marker));
      return {true, i,
              rationale.empty() ? std::nullopt : std::make_optional(rationale), resp.text};
    }
  }
  return {false, std::nullopt, std::nullopt, ""};
}

std::unique_ptr<StubJudge> StubJudge::always_similar() {
  return std::unique_ptr<StubJudge>(new StubJudge(Kind::similar, "stub:always-similar"));
}

std::unique_ptr<StubJudge> StubJudge::always_different() {
  return std::unique_ptr<StubJudge>(new StubJudge(Kind::different, "stub:always-different"));
}

std::unique_ptr<StubJudge> StubJudge::lookup_table(
    std::function<std::optional<std::string>(const std::string&)> lookup) {
  auto j = std::unique_ptr<StubJudge>(new StubJudge(Kind::lookup, "stub:lookup"));
  j->lookup_ = std::move(lookup);
  return j;
}

std::unique_ptr<StubJudge> StubJudge::from_lookup_file(const std::string& path) {
  auto j = util::load_json_file(path);
  if (!j.is_object()) throw ConfigError("lookup judge file must be a JSON object: " + path);
  auto table = std::make_shared<std::map<std::string, std::string>>();
  for (const auto& [k, v] : j.items()) {
    if (v.is_null()) continue;  // explicit "unique" entries are allowed
    (*table)[k] = v.get<std::string>();
  }
  return lookup_table([table](const std::string& key) -> std::optional<std::string> {
    auto it = table->find(key);
    if (it == table->end()) return std::nullopt;
    return it->second;
  });
}

JudgeVerdict StubJudge::is_duplicate(const model::InitialCode& code,
                                     const model::UniqueCumulativeCodebook& ucc) {
  switch (kind_) {
    case Kind::similar:
      return {true, ucc.entries().empty() ? std::nullopt : std::make_optional<size_t>(0),
              std::nullopt, ""};
    case Kind::different:
      return {false, std::nullopt, std::nullopt, ""};
    case Kind::lookup: {
      auto target = lookup_(model::code_key(code));
      if (!target) return {false, std::nullopt, std::nullopt, ""};
      for (size_t i = 0; i < ucc.entries().size(); ++i) {
        if (model::code_key(ucc.entries()[i].code) == *target) {
          return {true, i, std::nullopt, ""};
        }
      }
      return {false, std::nullopt, std::nullopt, ""};
    }
  }
  return {false, std::nullopt, std::nullopt, ""};
}

JudgeVerdict PairwiseFunctionJudge::is_duplicate(const model::InitialCode& code,
                                                 const model::UniqueCumulativeCodebook& ucc) {
  for (size_t i = 0; i < ucc.entries().size(); ++i) {
    if (pred_(code, ucc.entries()[i].code)) return {true, i, std::nullopt, ""};
  }
  return {false, std::nullopt, std::nullopt, ""};
}

}  // namespace codesat::judge
