#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gateway/gateway.hpp"
#include "judge/judge.hpp"
#include "orchestrator/config.hpp"

namespace codesat::orch {

// Experiment cells live under <out>/<sequence>/<iteration>/. The layout is a
// pure function of the config; completed cells are skipped unless forced.
std::string cell_dir(const std::string& out_dir, const std::string& sequence_name,
                     int iteration);

struct CommandResult {
  std::string summary_json;  // machine-readable summary printed by the CLI
  std::vector<std::string> warnings;
};

std::unique_ptr<llm::Gateway> make_coding_gateway(const RunConfig& config);
std::unique_ptr<llm::Gateway> make_judge_gateway(const RunConfig& config);
std::unique_ptr<judge::DuplicateJudge> make_judge(const RunConfig& config, llm::Gateway& gateway);

// Initial coding for every (sequence, iteration) cell: one codes CSV per
// interview plus a run manifest.
CommandResult cmd_code(const RunConfig& config, bool force);

// Reduces one cell directory (codes CSVs -> unique codebook, duplicates,
// counts, report). Resumes from a frontier checkpoint when one is present
// and consistent; judge aborts leave the checkpoint behind.
CommandResult cmd_reduce(const RunConfig& config, const std::string& run_dir, bool force);

// Assembles the cross-run table, stability summary, cumulative-curve CSV and
// the two SVGs. Audits each report against its own CSVs before including it.
CommandResult cmd_report(const RunConfig& config, const std::string& out_dir);

// Built-in sequence fixtures for an n-interview corpus.
std::string cmd_sequences_json(size_t n);

CommandResult cmd_compile_judge(const RunConfig& config, const std::string& bank_path,
                                int64_t seed, const std::string& out_path);

CommandResult cmd_eval_similarity(const RunConfig& config, const std::string& left_csv,
                                  const std::string& right_csv,
                                  const std::string& out_prefix);

}  // namespace codesat::orch
