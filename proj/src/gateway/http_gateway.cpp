#include "gateway/http_gateway.hpp"

#include <semaphore>
#include <thread>

#include <json.hpp>

#include <httplib.h>

#include "util/errors.hpp"

namespace codesat::llm {

namespace {

class HttplibTransport final : public HttpTransport {
 public:
  HttplibTransport(std::string base_url, std::chrono::seconds timeout)
      : client_(base_url) {
    client_.set_connection_timeout(timeout.count(), 0);
    client_.set_read_timeout(timeout.count(), 0);
    client_.set_write_timeout(timeout.count(), 0);
  }

  HttpResult post_json(const std::string& path, const std::string& body,
                       const std::string& bearer_token) override {
    httplib::Headers headers;
    if (!bearer_token.empty()) {
      headers.emplace("Authorization", "Bearer " + bearer_token);
    }
    auto res = client_.Post(path, headers, body, "application/json");
    if (!res) {
      return {0, "", httplib::to_string(res.error())};
    }
    return {res->status, res->body, ""};
  }

 private:
  httplib::Client client_;
};

bool retryable_status(int status) {
  return status == 429 || status == 408 || (status >= 500 && status < 600);
}

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url,
                                                      std::chrono::seconds timeout) {
  return std::make_unique<HttplibTransport>(base_url, timeout);
}

struct HttpGateway::Impl {
  std::unique_ptr<HttpTransport> transport;
  HttpGatewayOptions options;
  std::counting_semaphore<64> in_flight;

  Impl(std::unique_ptr<HttpTransport> t, HttpGatewayOptions o)
      : transport(std::move(t)),
        options(std::move(o)),
        in_flight(std::max(1, std::min(64, options.max_concurrency))) {}
};

HttpGateway::HttpGateway(std::unique_ptr<HttpTransport> transport, HttpGatewayOptions options)
    : impl_(std::make_unique<Impl>(std::move(transport), std::move(options))) {}

HttpGateway::~HttpGateway() = default;

CompletionResponse HttpGateway::complete(const CompletionRequest& request) {
  if (request.model_id.empty()) throw ConfigError("gateway: model_id not configured");
  if (request.temperature < 0) throw ConfigError("gateway: temperature must be >= 0");

  nlohmann::json payload = {
      {"model", request.model_id},
      {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
      {"temperature", request.temperature},
      {"max_tokens", request.max_output_tokens},
  };
  if (request.seed_hint) payload["seed"] = *request.seed_hint;
  const std::string body = payload.dump();

  const auto& opt = impl_->options;
  auto sleep_for = opt.sleeper ? opt.sleeper : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };

  impl_->in_flight.acquire();
  struct Release {
    std::counting_semaphore<64>& sem;
    ~Release() { sem.release(); }
  } release{impl_->in_flight};

  std::string last_failure;
  auto backoff = opt.initial_backoff;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    if (attempt > 0) {
      sleep_for(backoff);
      backoff *= 2;
    }
    HttpResult res = impl_->transport->post_json(opt.endpoint_path, body, opt.api_key);
    if (res.status == 0) {
      last_failure = "transport: " + res.transport_error;
      continue;
    }
    if (res.status == 401 || res.status == 403) {
      throw AuthError("gateway: authentication failed (HTTP " + std::to_string(res.status) + ")");
    }
    if (retryable_status(res.status)) {
      last_failure = "HTTP " + std::to_string(res.status);
      continue;
    }
    if (res.status != 200) {
      throw ProviderContentError("gateway: provider error HTTP " + std::to_string(res.status) +
                                 ": " + res.body.substr(0, 256));
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(res.body);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderContentError(std::string("gateway: unparsable provider response: ") +
                                 e.what());
    }
    if (j.contains("error")) {
      throw ProviderContentError("gateway: provider reported error: " + j["error"].dump());
    }
    if (!j.contains("choices") || j["choices"].empty()) {
      throw ProviderContentError("gateway: response has no choices");
    }
    const auto& choice = j["choices"][0];
    std::string text;
    if (choice.contains("message") && choice["message"].contains("content") &&
        !choice["message"]["content"].is_null()) {
      text = choice["message"]["content"].get<std::string>();
    }
    CompletionResponse out{std::move(text), std::nullopt, "live"};
    if (j.contains("usage") && j["usage"].is_object()) {
      TokenUsage usage;
      usage.prompt_tokens = j["usage"].value("prompt_tokens", int64_t{0});
      usage.completion_tokens = j["usage"].value("completion_tokens", int64_t{0});
      out.usage = usage;
    }
    return out;
  }
  throw TransportError("gateway: giving up after " + std::to_string(opt.max_retries + 1) +
                       " attempts (" + last_failure + ")");
}

}  // namespace codesat::llm
