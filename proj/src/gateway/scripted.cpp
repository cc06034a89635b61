#include "gateway/scripted.hpp"

#include "util/digest.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"

namespace codesat::llm {

std::unique_ptr<ScriptedGateway> ScriptedGateway::in_sequence(
    std::vector<std::string> responses) {
  if (responses.empty()) throw ConfigError("scripted gateway: empty script");
  auto g = std::unique_ptr<ScriptedGateway>(new ScriptedGateway());
  g->digest_mode_ = false;
  g->sequence_ = std::move(responses);
  return g;
}

std::unique_ptr<ScriptedGateway> ScriptedGateway::by_digest(
    std::map<std::string, std::string> responses) {
  if (responses.empty()) throw ConfigError("scripted gateway: empty script");
  auto g = std::unique_ptr<ScriptedGateway>(new ScriptedGateway());
  g->digest_mode_ = true;
  g->by_digest_ = std::move(responses);
  return g;
}

std::unique_ptr<ScriptedGateway> ScriptedGateway::from_file(const std::string& path) {
  auto j = util::load_json_file(path);
  if (!j.is_object() || !j.contains("mode") || !j.contains("responses")) {
    throw ConfigError("script file must hold {mode, responses}: " + path);
  }
  std::string mode = j["mode"].get<std::string>();
  if (mode == "sequence") {
    std::vector<std::string> seq;
    for (const auto& r : j["responses"]) seq.push_back(r.get<std::string>());
    return in_sequence(std::move(seq));
  }
  if (mode == "digest") {
    std::map<std::string, std::string> keyed;
    for (const auto& [k, v] : j["responses"].items()) keyed[k] = v.get<std::string>();
    return by_digest(std::move(keyed));
  }
  throw ConfigError("script file mode must be 'sequence' or 'digest': " + path);
}

CompletionResponse ScriptedGateway::complete(const CompletionRequest& request) {
  std::lock_guard<std::mutex> lock(mutex_);
  ++calls_made_;
  std::string text;
  if (digest_mode_) {
    std::string key = util::digest_hex(request.prompt);
    auto it = by_digest_.find(key);
    if (it == by_digest_.end()) {
      throw TransportError("scripted gateway: no response for prompt digest " + key);
    }
    text = it->second;
  } else {
    if (next_ >= sequence_.size()) {
      throw TransportError("scripted gateway: script underrun after " +
                           std::to_string(sequence_.size()) + " responses");
    }
    text = sequence_[next_++];
  }
  return {std::move(text), std::nullopt, "scripted"};
}

}  // namespace codesat::llm
