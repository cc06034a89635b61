#include "orchestrator/config.hpp"

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

namespace codesat::orch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string interpolate_env(const std::string& value) {
  std::string out;
  size_t i = 0;
  while (i < value.size()) {
    if (value[i] == '$' && i + 1 < value.size() && value[i + 1] == '{') {
      size_t close = value.find('}', i + 2);
      if (close == std::string::npos) throw ConfigError("unterminated ${...} in: " + value);
      std::string var = value.substr(i + 2, close - i - 2);
      const char* v = std::getenv(var.c_str());
      if (!v) throw ConfigError("environment variable not set: " + var);
      out += v;
      i = close + 1;
    } else {
      out += value[i++];
    }
  }
  return out;
}

void interpolate_tree(json& j) {
  if (j.is_string()) {
    j = interpolate_env(j.get<std::string>());
  } else if (j.is_object() || j.is_array()) {
    for (auto& child : j) interpolate_tree(child);
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

coder::AnalysisSequence sequence_from_config(const json& item) {
  if (item.is_string()) {
    std::string name = item.get<std::string>();
    if (name == "identity" || name == "reverse") {
      // Sized lazily once the corpus is known; store a marker.
      return {name, {}};
    }
    if (name == "constantinou-s3") return coder::constantinou_s3();
    if (name == "constantinou-s4") return coder::constantinou_s4();
    throw ConfigError("unknown built-in sequence: " + name);
  }
  if (item.is_object() && item.contains("name") && item.contains("order")) {
    coder::AnalysisSequence s;
    s.name = item["name"].get<std::string>();
    for (const auto& v : item["order"]) s.order.push_back(v.get<int>());
    return s;
  }
  throw ConfigError("sequence entries must be a built-in name or {name, order}");
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.sequences = {coder::AnalysisSequence{"identity", {}}};
  c.base_dir = ".";
  return c;
}

RunConfig load_config(const std::string& path) {
  json j = util::load_json_file(path);
  if (!j.is_object()) throw ConfigError("config must be a JSON object: " + path);
  interpolate_tree(j);

  RunConfig c = default_config();
  c.base_dir = fs::absolute(fs::path(path)).parent_path().string();

  if (j.contains("corpus")) {
    const auto& corpus = j["corpus"];
    read_if(corpus, "manifest", c.corpus_manifest);
    read_if(corpus, "dir", c.corpus_dir);
  }
  if (j.contains("gateway")) {
    const auto& g = j["gateway"];
    read_if(g, "backend", c.gateway.backend);
    read_if(g, "endpoint", c.gateway.endpoint);
    read_if(g, "endpoint_path", c.gateway.endpoint_path);
    read_if(g, "model_id", c.gateway.model_id);
    read_if(g, "api_key_env", c.gateway.api_key_env);
    read_if(g, "temperature", c.gateway.temperature);
    read_if(g, "max_output_tokens", c.gateway.max_output_tokens);
    read_if(g, "timeout_seconds", c.gateway.timeout_seconds);
    read_if(g, "max_concurrency", c.gateway.max_concurrency);
    read_if(g, "script", c.gateway.script);
  }
  if (j.contains("judge")) {
    const auto& jd = j["judge"];
    read_if(jd, "mode", c.judge.mode);
    read_if(jd, "compiled_prompt", c.judge.compiled_prompt);
    read_if(jd, "script", c.judge.script);
  }
  if (j.contains("embedding")) {
    const auto& e = j["embedding"];
    read_if(e, "provider", c.embedding.provider);
    read_if(e, "endpoint", c.embedding.endpoint);
    read_if(e, "endpoint_path", c.embedding.endpoint_path);
    read_if(e, "model_id", c.embedding.model_id);
    read_if(e, "api_key_env", c.embedding.api_key_env);
    read_if(e, "dimension", c.embedding.dimension);
    read_if(e, "highlight_threshold", c.embedding.highlight_threshold);
  }
  if (j.contains("coding")) {
    read_if(j["coding"], "max_codes", c.max_codes);
  }
  read_if(j, "iterations", c.iterations);
  read_if(j, "seed", c.seed);
  read_if(j, "output_dir", c.output_dir);
  if (j.contains("sequences")) {
    if (!j["sequences"].is_array() || j["sequences"].empty()) {
      throw ConfigError("sequences must be a non-empty array");
    }
    c.sequences.clear();
    for (const auto& item : j["sequences"]) c.sequences.push_back(sequence_from_config(item));
  }

  if (c.gateway.temperature < 0) throw ConfigError("temperature must be >= 0");
  if (c.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (c.max_codes < 1) throw ConfigError("max_codes must be >= 1");
  return c;
}

void apply_option(RunConfig& config, const std::string& key, const std::string& value) {
  // Overrides arrive from the CLI, so path values resolve against the
  // current directory rather than the config file's directory.
  auto absolute = [](const std::string& p) { return fs::absolute(p).string(); };
  if (key == "judge") {
    config.judge.mode = value;
  } else if (key == "compiled_prompt") {
    config.judge.compiled_prompt = absolute(value);
  } else if (key == "output_dir") {
    config.output_dir = absolute(value);
  } else if (key == "seed") {
    config.seed = std::stoll(value);
  } else if (key == "iterations") {
    config.iterations = std::stoi(value);
  } else if (key == "max_codes") {
    config.max_codes = std::stoi(value);
  } else if (key == "corpus_manifest") {
    config.corpus_manifest = absolute(value);
  } else if (key == "corpus_dir") {
    config.corpus_dir = absolute(value);
  } else if (key == "model_id") {
    config.gateway.model_id = value;
  } else if (key == "provider") {
    config.embedding.provider = value;
  } else if (key == "highlight_threshold") {
    config.embedding.highlight_threshold = std::stod(value);
  } else {
    throw ConfigError("unknown option: " + key);
  }
}

std::string resolve_path(const RunConfig& config, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (fs::path(config.base_dir) / p).lexically_normal().string();
}

std::vector<coder::Transcript> load_corpus(const RunConfig& config) {
  if (!config.corpus_manifest.empty()) {
    return coder::load_corpus_manifest(resolve_path(config, config.corpus_manifest));
  }
  if (!config.corpus_dir.empty()) {
    return coder::load_corpus_directory(resolve_path(config, config.corpus_dir));
  }
  throw ConfigError("config needs corpus.manifest or corpus.dir");
}

}  // namespace codesat::orch
