#pragma once

#include <stdexcept>
#include <string>

namespace codesat {

// Error classes drive both the C API status codes and the CLI exit codes:
// config/input/io -> 2, provider (transport/auth/content) -> 3,
// judge contract violations -> 4, anything else -> 1.
enum class ErrorKind {
  config,
  input,
  io,
  transport,
  auth,
  provider_content,
  judge_contract,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::config:
      case ErrorKind::input:
      case ErrorKind::io:
        return 2;
      case ErrorKind::transport:
      case ErrorKind::auth:
      case ErrorKind::provider_content:
        return 3;
      case ErrorKind::judge_contract:
        return 4;
      case ErrorKind::internal:
        return 1;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(std::string m) : Error(ErrorKind::config, std::move(m)) {}
};
struct InputError : Error {
  explicit InputError(std::string m) : Error(ErrorKind::input, std::move(m)) {}
};
struct IoError : Error {
  explicit IoError(std::string m) : Error(ErrorKind::io, std::move(m)) {}
};
struct TransportError : Error {
  explicit TransportError(std::string m) : Error(ErrorKind::transport, std::move(m)) {}
};
struct AuthError : Error {
  explicit AuthError(std::string m) : Error(ErrorKind::auth, std::move(m)) {}
};
struct ProviderContentError : Error {
  explicit ProviderContentError(std::string m)
      : Error(ErrorKind::provider_content, std::move(m)) {}
};
struct JudgeContractError : Error {
  explicit JudgeContractError(std::string m)
      : Error(ErrorKind::judge_contract, std::move(m)) {}
};
struct InternalError : Error {
  explicit InternalError(std::string m) : Error(ErrorKind::internal, std::move(m)) {}
};

}  // namespace codesat
