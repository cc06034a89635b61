#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace codesat::llm {

struct TokenUsage {
  int64_t prompt_tokens = 0;
  int64_t completion_tokens = 0;
};

struct CompletionRequest {
  std::string model_id;
  std::string prompt;
  double temperature = 0.0;  // must be >= 0
  int max_output_tokens = 4096;
  std::optional<int64_t> seed_hint;
};

struct CompletionResponse {
  std::string text;  // present even when empty; absence means transport failure
  std::optional<TokenUsage> usage;
  std::string backend_tag;  // "live" or "scripted"
};

class Gateway {
 public:
  virtual ~Gateway() = default;
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

// Binds a gateway to the request template a component uses for every call.
struct LmClient {
  Gateway* gateway = nullptr;
  CompletionRequest base;

  CompletionResponse complete(std::string prompt) const {
    CompletionRequest req = base;
    req.prompt = std::move(prompt);
    return gateway->complete(req);
  }
};

}  // namespace codesat::llm
