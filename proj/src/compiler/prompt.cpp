#include "compiler/prompt.hpp"

#include <json.hpp>

#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

namespace codesat::compiler {

using nlohmann::json;

const char* meaning_phrase(MeaningLabel label) {
  return label == MeaningLabel::similar ? kSimilarPhrase : kDifferentPhrase;
}

MeaningLabel parse_meaning_label(const std::string& text) {
  std::string t = util::to_lower(util::trim(text));
  if (t == kSimilarPhrase || t == "similar") return MeaningLabel::similar;
  if (t == kDifferentPhrase || t == "different") return MeaningLabel::different;
  throw InputError("unknown meaning label: '" + text + "'");
}

size_t ExampleBank::count(MeaningLabel label) const {
  size_t n = 0;
  for (const auto& ex : examples) {
    if (ex.meaning == label) ++n;
  }
  return n;
}

ExampleBank load_example_bank(const std::string& path) {
  json j = util::load_json_file(path);
  if (!j.is_array()) throw InputError("example bank must be a JSON array: " + path);
  ExampleBank bank;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("text_1") || !item.contains("text_2") ||
        !item.contains("meaning")) {
      throw InputError("bank entries need text_1, text_2 and meaning: " + path);
    }
    MeaningExample ex;
    ex.text_1 = item["text_1"].get<std::string>();
    ex.text_2 = item["text_2"].get<std::string>();
    ex.meaning = parse_meaning_label(item["meaning"].get<std::string>());
    bank.examples.push_back(std::move(ex));
  }
  if (bank.examples.empty()) throw InputError("example bank is empty: " + path);
  if (bank.count(MeaningLabel::similar) == 0 || bank.count(MeaningLabel::different) == 0) {
    throw InputError("example bank must contain both labels: " + path);
  }
  return bank;
}

namespace {

json demo_to_json(const MeaningExample& demo) {
  json d = json::object();
  if (demo.augmented) d["augmented"] = true;
  d["text_1"] = demo.text_1;
  d["text_2"] = demo.text_2;
  if (demo.rationale) d["rationale"] = *demo.rationale;
  d["meaning"] = meaning_phrase(demo.meaning);
  return d;
}

MeaningExample demo_from_json(const json& d) {
  if (!d.is_object() || !d.contains("text_1") || !d.contains("text_2") ||
      !d.contains("meaning")) {
    throw InputError("demo entries need text_1, text_2 and meaning");
  }
  MeaningExample demo;
  demo.text_1 = d["text_1"].get<std::string>();
  demo.text_2 = d["text_2"].get<std::string>();
  demo.meaning = parse_meaning_label(d["meaning"].get<std::string>());
  demo.augmented = d.value("augmented", false);
  if (d.contains("rationale")) {
    if (!demo.augmented) {
      throw InputError("demo carries a rationale but is not marked augmented");
    }
    demo.rationale = d["rationale"].get<std::string>();
  }
  return demo;
}

}  // namespace

std::string compiled_prompt_to_json(const CompiledJudgePrompt& prompt) {
  json program = json::object();
  program["lm"] = nullptr;
  program["traces"] = json::array();
  program["train"] = json::array();
  program["demos"] = json::array();
  for (const auto& demo : prompt.demos) program["demos"].push_back(demo_to_json(demo));
  program["signature_instructions"] = prompt.signature_instructions;
  program["signature_prefix"] = prompt.answer_prefix;
  program["extended_signature_instructions"] = prompt.signature_instructions;
  program["extended_signature_prefix"] = prompt.answer_prefix;

  json root = json::object();
  root["generate_answer"] = std::move(program);

  if (prompt.validation_score || prompt.compile_seed || prompt.metadata) {
    json meta = json::object();
    if (prompt.validation_score) meta["validation_score"] = *prompt.validation_score;
    if (prompt.compile_seed) meta["compile_seed"] = *prompt.compile_seed;
    if (prompt.metadata) {
      meta["teacher_model_id"] = prompt.metadata->teacher_model_id;
      meta["num_candidates"] = prompt.metadata->num_candidates;
      json val = json::array();
      for (const auto& ex : prompt.metadata->validation_split) {
        val.push_back({{"text_1", ex.text_1},
                       {"text_2", ex.text_2},
                       {"meaning", meaning_phrase(ex.meaning)}});
      }
      meta["validation_split"] = std::move(val);
    }
    root["compile_metadata"] = std::move(meta);
  }
  return root.dump(1) + "\n";
}

CompiledJudgePrompt compiled_prompt_from_json(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("compiled prompt is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("compiled prompt must be a JSON object");

  const json* program = nullptr;
  if (root.contains("generate_answer") && root["generate_answer"].is_object()) {
    program = &root["generate_answer"];
  } else if (root.contains("signature_instructions")) {
    program = &root;  // flat layout
  } else {
    throw InputError("compiled prompt lacks a program object");
  }
  if (!program->contains("signature_instructions")) {
    throw InputError("compiled prompt lacks signature_instructions");
  }

  CompiledJudgePrompt prompt;
  prompt.signature_instructions = (*program)["signature_instructions"].get<std::string>();
  prompt.answer_prefix = program->value("signature_prefix", std::string("Meaning:"));
  if (program->contains("demos")) {
    if (!(*program)["demos"].is_array()) throw InputError("demos must be an array");
    for (const auto& d : (*program)["demos"]) prompt.demos.push_back(demo_from_json(d));
  }

  if (root.contains("compile_metadata") && root["compile_metadata"].is_object()) {
    const json& meta = root["compile_metadata"];
    if (meta.contains("validation_score")) {
      prompt.validation_score = meta["validation_score"].get<double>();
    }
    if (meta.contains("compile_seed")) {
      prompt.compile_seed = meta["compile_seed"].get<int64_t>();
    }
    if (meta.contains("teacher_model_id") || meta.contains("num_candidates") ||
        meta.contains("validation_split")) {
      CompileMetadata md;
      md.teacher_model_id = meta.value("teacher_model_id", std::string());
      md.num_candidates = meta.value("num_candidates", 0);
      if (meta.contains("validation_split")) {
        for (const auto& v : meta["validation_split"]) {
          MeaningExample ex;
          ex.text_1 = v["text_1"].get<std::string>();
          ex.text_2 = v["text_2"].get<std::string>();
          ex.meaning = parse_meaning_label(v["meaning"].get<std::string>());
          md.validation_split.push_back(std::move(ex));
        }
      }
      prompt.metadata = std::move(md);
    }
  }
  return prompt;
}

void save_compiled_prompt(const std::string& path, const CompiledJudgePrompt& prompt) {
  util::write_file(path, compiled_prompt_to_json(prompt));
}

CompiledJudgePrompt load_compiled_prompt(const std::string& path) {
  return compiled_prompt_from_json(util::read_file(path));
}

}  // namespace codesat::compiler
