#include "compiler/compiler.hpp"

#include <algorithm>
#include <cmath>

#include "judge/judge.hpp"
#include "util/errors.hpp"
#include "util/rng.hpp"
#include "util/strings.hpp"

namespace codesat::compiler {

std::pair<std::vector<MeaningExample>, std::vector<MeaningExample>> split(
    const ExampleBank& bank, double train_fraction, uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0) {
    throw InputError("split: train_fraction must be in (0, 1)");
  }
  std::vector<MeaningExample> shuffled = bank.examples;
  util::Rng rng(seed);
  rng.shuffle(shuffled);
  size_t n_train =
      static_cast<size_t>(std::floor(static_cast<double>(shuffled.size()) * train_fraction));
  if (n_train == 0 || n_train == shuffled.size()) {
    throw InputError("split: both sides must be non-empty (bank size " +
                     std::to_string(shuffled.size()) + ", fraction " +
                     std::to_string(train_fraction) + ")");
  }
  std::vector<MeaningExample> train(shuffled.begin(),
                                    shuffled.begin() + static_cast<ptrdiff_t>(n_train));
  std::vector<MeaningExample> test(shuffled.begin() + static_cast<ptrdiff_t>(n_train),
                                   shuffled.end());
  return {std::move(train), std::move(test)};
}

bool exact_match_metric(MeaningLabel gold, MeaningLabel predicted) { return gold == predicted; }

namespace {

// Parses a teacher completion produced after the open reasoning prefix:
// everything before the final "Meaning:" marker is the rationale.
struct TeacherAnswer {
  MeaningLabel label;
  std::optional<std::string> rationale;
};

TeacherAnswer parse_teacher_answer(const std::string& raw) {
  TeacherAnswer out{judge::parse_meaning(raw), std::nullopt};
  size_t marker = raw.rfind("Meaning:");
  if (marker != std::string::npos) {
    std::string rationale = util::trim(raw.substr(0, marker));
    if (!rationale.empty()) out.rationale = rationale;
  }
  return out;
}

CompiledJudgePrompt blank_program() {
  CompiledJudgePrompt p;
  p.signature_instructions = kSignatureInstructions;
  p.answer_prefix = "Meaning:";
  return p;
}

std::vector<MeaningExample> bootstrap_from_order(const std::vector<MeaningExample>& ordered,
                                                 const llm::LmClient& teacher,
                                                 int max_bootstrapped,
                                                 std::vector<char>* used_mask) {
  std::vector<MeaningExample> kept;
  if (max_bootstrapped <= 0) return kept;
  CompiledJudgePrompt context = blank_program();
  for (size_t i = 0; i < ordered.size(); ++i) {
    if (kept.size() >= static_cast<size_t>(max_bootstrapped)) break;
    const MeaningExample& ex = ordered[i];
    std::string prompt = judge::render_pair_prompt_for_teacher(context, ex.text_1, ex.text_2);
    llm::CompletionResponse resp = teacher.complete(std::move(prompt));
    TeacherAnswer answer;
    try {
      answer = parse_teacher_answer(resp.text);
    } catch (const Error&) {
      continue;  // unusable teacher output; metric cannot pass
    }
    if (!exact_match_metric(ex.meaning, answer.label)) continue;
    MeaningExample demo = ex;
    demo.augmented = true;
    demo.rationale = answer.rationale;
    kept.push_back(demo);
    context.demos.push_back(kept.back());
    if (used_mask) (*used_mask)[i] = 1;
  }
  return kept;
}

}  // namespace

std::vector<MeaningExample> bootstrap_demos(const std::vector<MeaningExample>& train,
                                            const llm::LmClient& teacher, int max_bootstrapped,
                                            uint64_t seed) {
  if (max_bootstrapped < 0) throw InputError("bootstrap_demos: max_bootstrapped must be >= 0");
  std::vector<MeaningExample> ordered = train;
  util::Rng rng(seed);
  rng.shuffle(ordered);
  return bootstrap_from_order(ordered, teacher, max_bootstrapped, nullptr);
}

EvalResult evaluate(const CompiledJudgePrompt& compiled,
                    const std::vector<MeaningExample>& testset, const llm::LmClient& lm) {
  if (testset.empty()) throw InputError("evaluate: test set is empty");
  EvalResult r;
  r.total = static_cast<int>(testset.size());
  for (const auto& ex : testset) {
    std::string prompt = judge::render_pair_prompt(compiled, ex.text_1, ex.text_2);
    llm::CompletionResponse resp = lm.complete(std::move(prompt));
    MeaningLabel predicted;
    try {
      predicted = judge::parse_meaning(resp.text);
    } catch (const Error&) {
      ++r.parse_failures;
      continue;
    }
    if (exact_match_metric(ex.meaning, predicted)) ++r.correct;
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  return r;
}

CompileOutcome compile(const std::vector<MeaningExample>& train, const llm::LmClient& teacher,
                       const llm::LmClient& student, const CompileParams& params) {
  if (params.val_fraction <= 0.0 || params.val_fraction >= 1.0) {
    throw InputError("compile: val_fraction must be in (0, 1)");
  }
  std::vector<MeaningExample> shuffled = train;
  util::Rng rng(params.seed);
  rng.shuffle(shuffled);
  size_t n_val = static_cast<size_t>(
      std::floor(static_cast<double>(shuffled.size()) * params.val_fraction));
  if (n_val == 0 || n_val >= shuffled.size()) {
    throw InputError("compile: training set too small to carve a validation subset (" +
                     std::to_string(shuffled.size()) + " examples)");
  }
  std::vector<MeaningExample> validation(shuffled.begin(),
                                         shuffled.begin() + static_cast<ptrdiff_t>(n_val));
  std::vector<MeaningExample> pool(shuffled.begin() + static_cast<ptrdiff_t>(n_val),
                                   shuffled.end());

  CompileOutcome outcome;
  std::optional<size_t> best;
  std::vector<CompiledJudgePrompt> candidates;
  candidates.reserve(static_cast<size_t>(params.num_candidates));

  for (int c = 0; c < params.num_candidates; ++c) {
    uint64_t cand_seed = util::Rng::derive(params.seed, static_cast<uint64_t>(c));
    util::Rng cand_rng(cand_seed);
    std::vector<MeaningExample> order = pool;
    cand_rng.shuffle(order);

    std::vector<char> used(order.size(), 0);
    CompiledJudgePrompt candidate = blank_program();
    candidate.demos = bootstrap_from_order(order, teacher, params.max_bootstrapped, &used);
    int raw_kept = 0;
    for (size_t i = 0; i < order.size() && raw_kept < params.max_raw; ++i) {
      if (used[i]) continue;
      MeaningExample demo = order[i];
      demo.augmented = false;
      demo.rationale.reset();
      candidate.demos.push_back(std::move(demo));
      ++raw_kept;
    }

    EvalResult score = evaluate(candidate, validation, student);
    outcome.candidate_scores.push_back(score.accuracy);
    candidates.push_back(std::move(candidate));
    if (!best || score.accuracy > outcome.candidate_scores[*best]) {
      best = candidates.size() - 1;
    }
  }
  if (!best) throw InputError("compile: num_candidates must be >= 1");

  CompiledJudgePrompt winner = std::move(candidates[*best]);
  winner.validation_score = outcome.candidate_scores[*best];
  winner.compile_seed = static_cast<int64_t>(params.seed);
  CompileMetadata meta;
  meta.teacher_model_id = teacher.base.model_id;
  meta.num_candidates = params.num_candidates;
  meta.validation_split = validation;
  winner.metadata = std::move(meta);

  if (*winner.validation_score == 0.0) {
    outcome.warnings.push_back(
        "every candidate scored 0 on validation; returning the first candidate anyway");
  }
  outcome.prompt = std::move(winner);
  return outcome;
}

}  // namespace codesat::compiler
