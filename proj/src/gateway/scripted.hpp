#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gateway/gateway.hpp"

namespace codesat::llm {

// Deterministic playback backend. Two modes:
//  - sequence: responses consumed strictly in order; running past the end is
//    a "script underrun" error.
//  - digest: responses keyed by the FNV-1a64 hex digest of the prompt;
//    identical prompts get identical answers, so playback is idempotent and
//    safe under concurrent callers.
// Calls are serialized by a mutex to keep sequence playback deterministic.
class ScriptedGateway final : public Gateway {
 public:
  static std::unique_ptr<ScriptedGateway> in_sequence(std::vector<std::string> responses);
  static std::unique_ptr<ScriptedGateway> by_digest(std::map<std::string, std::string> responses);

  // Loads {"mode": "sequence"|"digest", "responses": [...]|{...}} from a file.
  static std::unique_ptr<ScriptedGateway> from_file(const std::string& path);

  CompletionResponse complete(const CompletionRequest& request) override;

  size_t calls_made() const { return calls_made_; }

 private:
  ScriptedGateway() = default;

  bool digest_mode_ = false;
  std::vector<std::string> sequence_;
  std::map<std::string, std::string> by_digest_;
  size_t next_ = 0;
  size_t calls_made_ = 0;
  std::mutex mutex_;
};

}  // namespace codesat::llm
