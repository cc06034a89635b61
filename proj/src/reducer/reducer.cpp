#include "reducer/reducer.hpp"

#include <json.hpp>

#include "util/digest.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"

namespace codesat::reducer {

using nlohmann::json;

std::string code_sets_digest(const std::vector<model::InterviewCodeSet>& code_sets) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    h = util::fnv1a64(s, h);
    h = util::fnv1a64(std::string_view("\x1f", 1), h);
  };
  for (const auto& set : code_sets) {
    feed(set.interview_id);
    feed(std::to_string(set.position));
    for (const auto& code : set.codes) {
      feed(code.name);
      feed(code.description);
      feed(code.quote);
    }
  }
  return util::to_hex(h);
}

namespace {

std::optional<size_t> find_exact_match(const model::UniqueCumulativeCodebook& ucc,
                                       const model::InitialCode& code) {
  const std::string key = model::code_key(code);
  for (size_t i = 0; i < ucc.entries().size(); ++i) {
    if (model::code_key(ucc.entries()[i].code) == key) return i;
  }
  return std::nullopt;
}

ReductionResult run_from(ReductionResult state, size_t first_index,
                         const std::vector<model::InterviewCodeSet>& code_sets,
                         judge::DuplicateJudge& judge, const std::string& digest,
                         const PositionObserver& on_position) {
  size_t running_total = state.counts.empty() ? 0 : state.counts.back().cumulative_total;

  for (size_t si = first_index; si < code_sets.size(); ++si) {
    const auto& set = code_sets[si];
    if (set.codes.empty()) {
      throw InputError("interview " + set.interview_id + " has no codes");
    }
    for (size_t ci = 0; ci < set.codes.size(); ++ci) {
      const auto& code = set.codes[ci];
      model::SourceRef source{set.interview_id, set.position};
      if (si == 0) {
        // The seed interview enters wholesale; no intra-set judging.
        state.ucc.append_unique(code, source);
        continue;
      }
      if (auto exact = find_exact_match(state.ucc, code)) {
        state.ucc.record_duplicate(code, exact, set.position, kExactMatchRationale);
        continue;
      }
      judge::JudgeVerdict verdict;
      try {
        verdict = judge.is_duplicate(code, state.ucc);
      } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " [at position " +
                                  std::to_string(set.position) + ", code index " +
                                  std::to_string(ci) + "]");
      }
      if (verdict.is_duplicate) {
        state.ucc.record_duplicate(code, verdict.matched_unique_index, set.position,
                                   verdict.rationale);
      } else {
        state.ucc.append_unique(code, source);
      }
    }
    running_total += set.codes.size();
    state.counts.push_back({set.position, running_total, state.ucc.entries().size()});
    if (on_position) {
      Frontier f{digest, static_cast<int>(si) + 1, state};
      on_position(f);
    }
  }
  return state;
}

}  // namespace

ReductionResult reduce(const std::vector<model::InterviewCodeSet>& code_sets,
                       judge::DuplicateJudge& judge, const PositionObserver& on_position) {
  if (code_sets.empty()) throw InputError("reduce: no code sets");
  return run_from(ReductionResult{}, 0, code_sets, judge, code_sets_digest(code_sets),
                  on_position);
}

ReductionResult resume(const Frontier& frontier,
                       const std::vector<model::InterviewCodeSet>& code_sets,
                       judge::DuplicateJudge& judge, const PositionObserver& on_position) {
  if (code_sets.empty()) throw InputError("resume: no code sets");
  const std::string digest = code_sets_digest(code_sets);
  if (digest != frontier.corpus_digest) {
    throw InputError("resume: corpus digest mismatch (checkpoint " + frontier.corpus_digest +
                     ", corpus " + digest + ")");
  }
  if (frontier.next_position_index < 0 ||
      static_cast<size_t>(frontier.next_position_index) > code_sets.size()) {
    throw InputError("resume: frontier position out of range");
  }
  return run_from(frontier.state, static_cast<size_t>(frontier.next_position_index), code_sets,
                  judge, digest, on_position);
}

namespace {

json code_to_json(const model::InitialCode& c) {
  return {{"name", c.name}, {"description", c.description}, {"quote", c.quote}};
}

model::InitialCode code_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("description").get<std::string>(),
          j.value("quote", std::string())};
}

}  // namespace

void save_frontier(const std::string& path, const Frontier& frontier) {
  json entries = json::array();
  for (const auto& e : frontier.state.ucc.entries()) {
    entries.push_back({{"code", code_to_json(e.code)},
                       {"interview_id", e.source.interview_id},
                       {"position", e.source.position}});
  }
  json duplicates = json::array();
  for (const auto& d : frontier.state.ucc.duplicates()) {
    json rec = {{"code", code_to_json(d.duplicate)}, {"position", d.position}};
    if (d.matched_unique_index) rec["matched_unique_index"] = *d.matched_unique_index;
    if (d.rationale) rec["rationale"] = *d.rationale;
    duplicates.push_back(std::move(rec));
  }
  json counts = json::array();
  for (const auto& c : frontier.state.counts) {
    counts.push_back({{"position", c.position},
                      {"cumulative_total", c.cumulative_total},
                      {"cumulative_unique", c.cumulative_unique}});
  }
  json root = {{"corpus_digest", frontier.corpus_digest},
               {"next_position_index", frontier.next_position_index},
               {"entries", std::move(entries)},
               {"duplicates", std::move(duplicates)},
               {"counts", std::move(counts)}};
  util::save_json_file(path, root);
}

Frontier load_frontier(const std::string& path) {
  json root = util::load_json_file(path);
  Frontier f;
  try {
    f.corpus_digest = root.at("corpus_digest").get<std::string>();
    f.next_position_index = root.at("next_position_index").get<int>();
    for (const auto& e : root.at("entries")) {
      f.state.ucc.append_unique(code_from_json(e.at("code")),
                                {e.at("interview_id").get<std::string>(),
                                 e.at("position").get<int>()});
    }
    for (const auto& d : root.at("duplicates")) {
      std::optional<size_t> idx;
      if (d.contains("matched_unique_index")) idx = d["matched_unique_index"].get<size_t>();
      std::optional<std::string> rationale;
      if (d.contains("rationale")) rationale = d["rationale"].get<std::string>();
      f.state.ucc.record_duplicate(code_from_json(d.at("code")), idx,
                                   d.at("position").get<int>(), rationale);
    }
    for (const auto& c : root.at("counts")) {
      f.state.counts.push_back({c.at("position").get<int>(),
                                c.at("cumulative_total").get<size_t>(),
                                c.at("cumulative_unique").get<size_t>()});
    }
  } catch (const json::exception& e) {
    throw InputError("frontier checkpoint is malformed: " + path + ": " + e.what());
  }
  return f;
}

}  // namespace codesat::reducer
