#pragma once

// Gateway stand-ins shared by the unit suites, the acceptance suite and the
// fixture generator. None of them touch the network.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compiler/prompt.hpp"
#include "gateway/gateway.hpp"
#include "util/digest.hpp"

namespace codesat::testing {

// Pulls the query pair out of a rendered pair prompt (the final
// "Text 1:"/"Text 2:" block).
inline std::pair<std::string, std::string> extract_query_pair(const std::string& prompt) {
  size_t t1 = prompt.rfind("Text 1: ");
  if (t1 == std::string::npos) throw std::runtime_error("prompt has no Text 1 block");
  size_t t1_end = prompt.find('\n', t1);
  size_t t2 = prompt.find("Text 2: ", t1_end);
  if (t2 == std::string::npos) throw std::runtime_error("prompt has no Text 2 block");
  size_t t2_end = prompt.find('\n', t2);
  std::string text_1 = prompt.substr(t1 + 8, t1_end - t1 - 8);
  std::string text_2 = prompt.substr(t2 + 8, (t2_end == std::string::npos ? prompt.size() : t2_end) - t2 - 8);
  return {text_1, text_2};
}

// Answers every pair prompt with the gold label from the bank (optionally
// inverted), prefacing it with a small rationale so bootstrap keeps demos.
class OracleTeacherGateway final : public llm::Gateway {
 public:
  OracleTeacherGateway(const std::vector<compiler::MeaningExample>& bank, bool invert = false)
      : invert_(invert) {
    for (const auto& ex : bank) gold_[key(ex.text_1, ex.text_2)] = ex.meaning;
  }

  llm::CompletionResponse complete(const llm::CompletionRequest& request) override {
    auto [t1, t2] = extract_query_pair(request.prompt);
    auto it = gold_.find(key(t1, t2));
    if (it == gold_.end()) throw std::runtime_error("teacher asked about an unknown pair");
    compiler::MeaningLabel label = it->second;
    if (invert_) {
      label = label == compiler::MeaningLabel::similar ? compiler::MeaningLabel::different
                                                       : compiler::MeaningLabel::similar;
    }
    std::string text = "produce the meaning. The two code descriptions are weighed against "
                       "each other for shared meaning.\nMeaning: ";
    text += compiler::meaning_phrase(label);
    return {std::move(text), std::nullopt, "scripted"};
  }

 private:
  static std::string key(const std::string& a, const std::string& b) { return a + "\x1f" + b; }

  std::map<std::string, compiler::MeaningLabel> gold_;
  bool invert_;
};

// Captures every (prompt digest -> response) flowing through a delegate.
class RecordingGateway final : public llm::Gateway {
 public:
  explicit RecordingGateway(llm::Gateway& delegate) : delegate_(delegate) {}

  llm::CompletionResponse complete(const llm::CompletionRequest& request) override {
    llm::CompletionResponse resp = delegate_.complete(request);
    tape_[util::digest_hex(request.prompt)] = resp.text;
    return resp;
  }

  const std::map<std::string, std::string>& tape() const { return tape_; }

 private:
  llm::Gateway& delegate_;
  std::map<std::string, std::string> tape_;
};

// Answers with a fixed response, or via a callback.
class FunctionGateway final : public llm::Gateway {
 public:
  explicit FunctionGateway(std::function<std::string(const std::string&)> fn)
      : fn_(std::move(fn)) {}

  llm::CompletionResponse complete(const llm::CompletionRequest& request) override {
    return {fn_(request.prompt), std::nullopt, "scripted"};
  }

 private:
  std::function<std::string(const std::string&)> fn_;
};

}  // namespace codesat::testing
