#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "compiler/prompt.hpp"
#include "gateway/gateway.hpp"

namespace codesat::compiler {

// Seeded shuffle-then-cut split; the training side takes floor(n * fraction)
// and the remainder goes to test. Both sides must end up non-empty.
std::pair<std::vector<MeaningExample>, std::vector<MeaningExample>> split(
    const ExampleBank& bank, double train_fraction, uint64_t seed);

bool exact_match_metric(MeaningLabel gold, MeaningLabel predicted);

// Walks the seeded-shuffled training examples asking the teacher for a
// rationale and label per pair (demos kept so far are shown as context) and
// keeps an example (augmented, with the teacher's rationale) only when the
// predicted label matches gold. Stops at max_bootstrapped kept demos.
std::vector<MeaningExample> bootstrap_demos(const std::vector<MeaningExample>& train,
                                            const llm::LmClient& teacher, int max_bootstrapped,
                                            uint64_t seed);

struct CompileParams {
  int max_bootstrapped = 4;
  int max_raw = 16;
  int num_candidates = 8;
  double val_fraction = 0.25;  // carved from the training set; test stays untouched
  uint64_t seed = 0;
};

struct EvalResult {
  double accuracy = 0.0;
  int correct = 0;
  int parse_failures = 0;  // counted as wrong, reported separately
  int total = 0;
};

// Scores a candidate prompt: render + complete + parse per example against
// the gold labels.
EvalResult evaluate(const CompiledJudgePrompt& compiled,
                    const std::vector<MeaningExample>& testset, const llm::LmClient& lm);

struct CompileOutcome {
  CompiledJudgePrompt prompt;
  std::vector<double> candidate_scores;
  std::vector<std::string> warnings;
};

// Random search over demo subsets: carves a validation slice from train,
// builds num_candidates candidates (bootstrapped demos + raw demo sample,
// each from a derived seed), scores them on validation and returns the best
// (ties broken by lowest candidate index). Deterministic for a fixed seed
// and deterministic gateways.
CompileOutcome compile(const std::vector<MeaningExample>& train, const llm::LmClient& teacher,
                       const llm::LmClient& student, const CompileParams& params);

}  // namespace codesat::compiler
