#pragma once

#include <functional>
#include <string>
#include <vector>

#include "judge/judge.hpp"
#include "model/codebook.hpp"

namespace codesat::reducer {

struct ReductionResult {
  model::UniqueCumulativeCodebook ucc;
  std::vector<model::PositionCount> counts;  // one row per analysis position
};

// Snapshot taken after each completed interview position so an aborted run
// can pick up where it left off.
struct Frontier {
  std::string corpus_digest;
  int next_position_index = 0;  // 0-based index into code_sets; == size when done
  ReductionResult state;
};

// Stable digest of the code sets a reduction was started from; resume refuses
// to continue onto an altered corpus.
std::string code_sets_digest(const std::vector<model::InterviewCodeSet>& code_sets);

using PositionObserver = std::function<void(const Frontier&)>;

// Cumulative reduction: the first set seeds the codebook wholesale, every
// later code is checked (exact-text short-circuit first, then the judge) and
// either appended or logged as a duplicate. Judge failures carry the exact
// (position, code index) they stopped at.
ReductionResult reduce(const std::vector<model::InterviewCodeSet>& code_sets,
                       judge::DuplicateJudge& judge,
                       const PositionObserver& on_position = nullptr);

// Continues a persisted frontier to completion. The finished result is
// identical to an uninterrupted run given the same judge verdicts.
ReductionResult resume(const Frontier& frontier,
                       const std::vector<model::InterviewCodeSet>& code_sets,
                       judge::DuplicateJudge& judge,
                       const PositionObserver& on_position = nullptr);

void save_frontier(const std::string& path, const Frontier& frontier);
Frontier load_frontier(const std::string& path);

inline constexpr const char* kExactMatchRationale = "exact-text match (pre-judge)";

}  // namespace codesat::reducer
