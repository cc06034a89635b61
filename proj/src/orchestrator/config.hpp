#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coder/coder.hpp"

namespace codesat::orch {

struct GatewayConfig {
  std::string backend = "http";  // "http" or "scripted"
  std::string endpoint = "https://api.openai.com";
  std::string endpoint_path = "/v1/chat/completions";
  std::string model_id;
  std::string api_key_env = "CODESAT_API_KEY";
  double temperature = 0.0;
  int max_output_tokens = 4096;
  int timeout_seconds = 120;
  int max_concurrency = 4;
  std::string script;  // scripted backend playback file
};

struct JudgeConfig {
  std::string mode = "compiled";  // compiled | zero-shot | stub:... (see CLI --judge)
  std::string compiled_prompt;
  // When set, the judge talks to its own scripted gateway; otherwise it
  // shares the coding gateway settings.
  std::string script;
};

struct EmbeddingConfig {
  std::string provider = "fixture";  // fixture | file:<path> | http
  std::string endpoint = "https://api.openai.com";
  std::string endpoint_path = "/v1/embeddings";
  std::string model_id = "all-MiniLM-L6-v2";
  std::string api_key_env = "CODESAT_API_KEY";
  size_t dimension = 64;  // fixture provider
  double highlight_threshold = 0.75;
};

struct RunConfig {
  std::string corpus_manifest;  // manifest CSV, or
  std::string corpus_dir;       // directory of .txt transcripts
  GatewayConfig gateway;
  JudgeConfig judge;
  EmbeddingConfig embedding;
  int max_codes = 15;
  int iterations = 1;
  int64_t seed = 0;
  std::vector<coder::AnalysisSequence> sequences;  // default: identity
  std::string output_dir = "out";
  std::string base_dir;  // directory of the config file; relative paths resolve here
};

// Loads the JSON config; ${VAR} in string values is interpolated from the
// environment (missing variables are a config error). Relative paths inside
// the file resolve against the file's directory.
RunConfig load_config(const std::string& path);

RunConfig default_config();

// Applies a CLI-style override ("judge", "seed", "output_dir", ...).
void apply_option(RunConfig& config, const std::string& key, const std::string& value);

std::string resolve_path(const RunConfig& config, const std::string& path);

std::vector<coder::Transcript> load_corpus(const RunConfig& config);

}  // namespace codesat::orch
