#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include "gateway/gateway.hpp"

namespace codesat::llm {

struct HttpResult {
  int status = 0;        // 0 means the request never completed
  std::string body;
  std::string transport_error;  // non-empty when status == 0
};

// Thin transport seam so retry behavior is testable without sockets.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResult post_json(const std::string& path, const std::string& body,
                               const std::string& bearer_token) = 0;
};

// cpp-httplib backed transport for a base URL like "http://host:port".
std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url,
                                                      std::chrono::seconds timeout);

struct HttpGatewayOptions {
  std::string endpoint_path = "/v1/chat/completions";
  std::string api_key;       // resolved from the configured env var by the caller
  int max_retries = 3;       // retries after the first attempt
  std::chrono::milliseconds initial_backoff{1000};  // then doubled: 1s, 2s, 4s
  int max_concurrency = 4;   // in-flight request cap
  std::function<void(std::chrono::milliseconds)> sleeper;  // injectable for tests
};

// Chat-completion wire contract: one user message carrying the whole prompt.
// Retries transport failures and rate limits with capped exponential backoff;
// authentication and content errors surface immediately.
class HttpGateway final : public Gateway {
 public:
  HttpGateway(std::unique_ptr<HttpTransport> transport, HttpGatewayOptions options);
  ~HttpGateway() override;

  CompletionResponse complete(const CompletionRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace codesat::llm
