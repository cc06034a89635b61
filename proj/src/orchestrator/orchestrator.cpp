#include "orchestrator/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "compiler/compiler.hpp"
#include "gateway/http_gateway.hpp"
#include "gateway/scripted.hpp"
#include "metrics/metrics.hpp"
#include "reducer/reducer.hpp"
#include "simeval/similarity.hpp"
#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

namespace codesat::orch {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cell_dir(const std::string& out_dir, const std::string& sequence_name,
                     int iteration) {
  return (fs::path(out_dir) / sequence_name / std::to_string(iteration)).string();
}

namespace {

std::string resolve_output_dir(const RunConfig& config) {
  return resolve_path(config, config.output_dir);
}

std::string getenv_or_empty(const std::string& var) {
  const char* v = var.empty() ? nullptr : std::getenv(var.c_str());
  return v ? v : "";
}

std::unique_ptr<llm::Gateway> make_gateway_impl(const RunConfig& config,
                                                const GatewayConfig& gw,
                                                const std::string& script_override) {
  std::string script = script_override.empty() ? gw.script : script_override;
  if (gw.backend == "scripted" || !script.empty()) {
    if (script.empty()) throw ConfigError("scripted gateway needs a script file");
    return llm::ScriptedGateway::from_file(resolve_path(config, script));
  }
  if (gw.backend != "http") throw ConfigError("unknown gateway backend: " + gw.backend);
  if (gw.model_id.empty()) throw ConfigError("gateway.model_id is required for the http backend");
  llm::HttpGatewayOptions options;
  options.endpoint_path = gw.endpoint_path;
  options.api_key = getenv_or_empty(gw.api_key_env);
  options.max_concurrency = gw.max_concurrency;
  return std::make_unique<llm::HttpGateway>(
      llm::make_httplib_transport(gw.endpoint, std::chrono::seconds(gw.timeout_seconds)),
      std::move(options));
}

llm::LmClient lm_client(const RunConfig& config, llm::Gateway& gateway) {
  llm::CompletionRequest base;
  base.model_id = config.gateway.model_id.empty() ? "scripted" : config.gateway.model_id;
  base.temperature = config.gateway.temperature;
  base.max_output_tokens = config.gateway.max_output_tokens;
  if (config.seed != 0) base.seed_hint = config.seed;
  return {&gateway, std::move(base)};
}

coder::AnalysisSequence materialize_sequence(const coder::AnalysisSequence& s, size_t n) {
  if (!s.order.empty()) return s;
  if (s.name == "identity") return coder::identity_sequence(n);
  if (s.name == "reverse") return coder::reverse_sequence(n);
  throw ConfigError("sequence '" + s.name + "' has no order");
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

constexpr const char* kFrontierFile = "frontier.json";
constexpr const char* kReportFile = "report.json";
constexpr const char* kManifestFile = "manifest.json";

}  // namespace

std::unique_ptr<llm::Gateway> make_coding_gateway(const RunConfig& config) {
  return make_gateway_impl(config, config.gateway, "");
}

std::unique_ptr<llm::Gateway> make_judge_gateway(const RunConfig& config) {
  return make_gateway_impl(config, config.gateway, config.judge.script);
}

std::unique_ptr<judge::DuplicateJudge> make_judge(const RunConfig& config,
                                                  llm::Gateway& gateway) {
  const std::string& mode = config.judge.mode;
  if (mode == "zero-shot") {
    return std::make_unique<judge::ZeroShotJudge>(lm_client(config, gateway));
  }
  if (mode == "compiled") {
    if (config.judge.compiled_prompt.empty()) {
      throw ConfigError("judge mode 'compiled' needs judge.compiled_prompt");
    }
    auto compiled =
        compiler::load_compiled_prompt(resolve_path(config, config.judge.compiled_prompt));
    return std::make_unique<judge::CompiledPairwiseJudge>(std::move(compiled),
                                                          lm_client(config, gateway));
  }
  if (mode == "stub:always-similar") return judge::StubJudge::always_similar();
  if (mode == "stub:always-different") return judge::StubJudge::always_different();
  if (util::starts_with(mode, "stub:lookup:")) {
    return judge::StubJudge::from_lookup_file(resolve_path(config, mode.substr(12)));
  }
  throw ConfigError("unknown judge mode: " + mode +
                    " (expected zero-shot|compiled|stub:always-similar|stub:always-different|"
                    "stub:lookup:<file>)");
}

CommandResult cmd_code(const RunConfig& config, bool force) {
  auto corpus = load_corpus(config);
  auto gateway = make_coding_gateway(config);
  llm::LmClient lm = lm_client(config, *gateway);
  const std::string out_dir = resolve_output_dir(config);

  CommandResult result;
  json cells = json::array();
  for (const auto& seq_template : config.sequences) {
    coder::AnalysisSequence seq = materialize_sequence(seq_template, corpus.size());
    coder::validate_sequence(seq, corpus.size());
    for (int iter = 1; iter <= config.iterations; ++iter) {
      const std::string dir = cell_dir(out_dir, seq.name, iter);
      const std::string manifest_path = (fs::path(dir) / kManifestFile).string();
      if (!force && fs::exists(manifest_path)) {
        cells.push_back({{"cell", dir}, {"skipped", true}});
        continue;
      }
      std::error_code ec;
      fs::create_directories(fs::path(dir) / "codes", ec);
      const std::string started_at = timestamp_utc();

      coder::CodeCorpusOptions options;
      options.max_codes = config.max_codes;
      options.max_concurrency = config.gateway.max_concurrency;
      options.warn = [&](const std::string& w) { result.warnings.push_back(w); };

      std::vector<model::InterviewCodeSet> sets;
      try {
        sets = coder::code_corpus(corpus, seq, lm, options);
      } catch (const Error& e) {
        throw Error(e.kind(), "cell " + seq.name + "/" + std::to_string(iter) + ": " + e.what());
      }

      size_t total = 0;
      for (const auto& set : sets) {
        model::write_codes_csv((fs::path(dir) / "codes" / (set.interview_id + ".csv")).string(),
                               set);
        total += set.codes.size();
      }

      json manifest = {{"sequence", seq.name},
                       {"order", seq.order},
                       {"iteration", iter},
                       {"model_id", lm.base.model_id},
                       {"temperature", lm.base.temperature},
                       {"max_codes", config.max_codes},
                       {"total_codes", total},
                       {"interview_ids", json::array()},
                       {"started_at", started_at},
                       {"finished_at", timestamp_utc()}};
      for (const auto& set : sets) manifest["interview_ids"].push_back(set.interview_id);
      util::save_json_file(manifest_path, manifest);
      cells.push_back({{"cell", dir}, {"total_codes", total}});
    }
  }
  json summary = {{"command", "code"}, {"cells", std::move(cells)}};
  if (!result.warnings.empty()) summary["warnings"] = result.warnings;
  result.summary_json = summary.dump(2);
  return result;
}

namespace {

std::vector<model::InterviewCodeSet> load_cell_code_sets(const std::string& run_dir) {
  const fs::path codes_dir = fs::path(run_dir) / "codes";
  if (!fs::is_directory(codes_dir)) {
    throw InputError("no codes/ directory under " + run_dir + " (run `code` first)");
  }
  std::vector<model::InterviewCodeSet> sets;
  for (const auto& entry : fs::directory_iterator(codes_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      sets.push_back(model::read_codes_csv(entry.path().string()));
    }
  }
  if (sets.empty()) throw InputError("no codes CSVs under " + codes_dir.string());
  std::sort(sets.begin(), sets.end(),
            [](const auto& a, const auto& b) { return a.position < b.position; });
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].position != static_cast<int>(i) + 1) {
      throw InputError("positions in " + run_dir + " are not contiguous from 1");
    }
  }
  return sets;
}

struct CellIdentity {
  std::string sequence = "unknown";
  int iteration = 0;
};

CellIdentity read_cell_identity(const std::string& run_dir) {
  CellIdentity id;
  const fs::path manifest = fs::path(run_dir) / kManifestFile;
  if (fs::exists(manifest)) {
    json m = util::load_json_file(manifest.string());
    id.sequence = m.value("sequence", std::string("unknown"));
    id.iteration = m.value("iteration", 0);
  }
  return id;
}

}  // namespace

CommandResult cmd_reduce(const RunConfig& config, const std::string& run_dir, bool force) {
  CommandResult result;
  const fs::path dir(run_dir);
  const std::string report_path = (dir / kReportFile).string();
  const std::string frontier_path = (dir / kFrontierFile).string();

  if (!force && fs::exists(report_path)) {
    result.summary_json =
        json{{"command", "reduce"}, {"cell", run_dir}, {"skipped", true}}.dump(2);
    return result;
  }
  if (force) {
    std::error_code ec;
    fs::remove(frontier_path, ec);
    fs::remove(report_path, ec);
  }

  auto sets = load_cell_code_sets(run_dir);
  auto gateway = make_judge_gateway(config);
  auto judge = make_judge(config, *gateway);

  reducer::PositionObserver checkpoint = [&](const reducer::Frontier& f) {
    reducer::save_frontier(frontier_path, f);
  };

  reducer::ReductionResult reduction;
  bool resumed = false;
  if (fs::exists(frontier_path)) {
    reducer::Frontier frontier = reducer::load_frontier(frontier_path);
    reduction = reducer::resume(frontier, sets, *judge, checkpoint);
    resumed = true;
  } else {
    reduction = reducer::reduce(sets, *judge, checkpoint);
  }

  // Conservation audit before anything is written.
  size_t tcc_size = 0;
  for (const auto& s : sets) tcc_size += s.codes.size();
  if (reduction.ucc.entries().size() + reduction.ucc.duplicates().size() != tcc_size) {
    throw InternalError("reduction lost codes: " +
                        std::to_string(reduction.ucc.entries().size()) + " unique + " +
                        std::to_string(reduction.ucc.duplicates().size()) + " duplicates != " +
                        std::to_string(tcc_size) + " total");
  }

  model::write_unique_codebook_csv((dir / "unique_codebook.csv").string(), reduction.ucc);
  model::write_duplicates_csv((dir / "duplicates.csv").string(), reduction.ucc);
  model::write_counts_csv((dir / "counts.csv").string(), reduction.counts);

  CellIdentity id = read_cell_identity(run_dir);
  metrics::SaturationReport report = metrics::build_report(
      id.sequence + "/" + std::to_string(id.iteration), id.sequence, id.iteration,
      reduction.counts);
  metrics::save_report_json(report_path, report);

  std::error_code ec;
  fs::remove(frontier_path, ec);  // completed; the checkpoint has served its purpose

  result.summary_json = json{{"command", "reduce"},
                             {"cell", run_dir},
                             {"judge", judge->mode_name()},
                             {"resumed", resumed},
                             {"total_codes", report.total_codes},
                             {"unique_codes", report.unique_codes},
                             {"its", report.its},
                             {"its_display", metrics::format2(report.its)}}
                            .dump(2);
  return result;
}

namespace {

void audit_report_against_csvs(const std::string& run_dir,
                               const metrics::SaturationReport& report) {
  const fs::path dir(run_dir);
  auto counts = model::read_counts_csv((dir / "counts.csv").string());
  auto entries = model::read_unique_codebook_csv((dir / "unique_codebook.csv").string());
  if (counts != report.counts) {
    throw InternalError("report/CSV mismatch (counts) in " + run_dir);
  }
  if (entries.size() != report.unique_codes) {
    throw InternalError("report/CSV mismatch (unique codebook size) in " + run_dir);
  }
  double its = metrics::its_ratio(counts.back().cumulative_unique,
                                  counts.back().cumulative_total);
  if (its != report.its) {
    throw InternalError("report/CSV mismatch (its) in " + run_dir);
  }
}

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* kSeriesColors[] = {"#1b7837", "#d73027", "#4575b4", "#fdae61",
                               "#984ea3", "#f781bf", "#666666", "#a6611a"};

std::string curves_svg(const std::vector<metrics::SaturationReport>& reports) {
  constexpr int kWidth = 640, kHeight = 420, kPad = 48;
  size_t max_pos = 0;
  size_t max_count = 1;
  for (const auto& r : reports) {
    max_pos = std::max(max_pos, r.counts.size());
    for (const auto& c : r.counts) max_count = std::max(max_count, c.cumulative_total);
  }
  auto x_of = [&](double pos) {  // 1-based display position
    return kPad + (pos - 1.0) / std::max<double>(1.0, static_cast<double>(max_pos) - 1.0) *
                      (kWidth - 2 * kPad);
  };
  auto y_of = [&](double count) {
    return kHeight - kPad - count / static_cast<double>(max_count) * (kHeight - 2 * kPad);
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + std::to_string(kPad) + "\" y1=\"" + std::to_string(kHeight - kPad) +
         "\" x2=\"" + std::to_string(kWidth - kPad) + "\" y2=\"" +
         std::to_string(kHeight - kPad) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + std::to_string(kPad) + "\" y1=\"" + std::to_string(kPad) + "\" x2=\"" +
         std::to_string(kPad) + "\" y2=\"" + std::to_string(kHeight - kPad) +
         "\" stroke=\"black\"/>\n";

  int color = 0;
  for (const auto& r : reports) {
    std::string total_pts, unique_pts;
    for (const auto& c : r.counts) {
      total_pts += svg_number(x_of(c.position)) + "," +
                   svg_number(y_of(static_cast<double>(c.cumulative_total))) + " ";
      unique_pts += svg_number(x_of(c.position)) + "," +
                    svg_number(y_of(static_cast<double>(c.cumulative_unique))) + " ";
    }
    const char* col = kSeriesColors[color % 8];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(col) +
           "\" stroke-dasharray=\"4 2\" points=\"" + total_pts + "\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" points=\"" + unique_pts +
           "\"/>\n";
    svg += "<text x=\"" + std::to_string(kPad + 6) + "\" y=\"" +
           std::to_string(kPad + 14 + 14 * color) + "\" fill=\"" + col +
           "\" font-size=\"11\">" + r.run_id + " (ITS " + metrics::format2(r.its) + ")</text>\n";
    ++color;
  }
  svg += "<text x=\"" + std::to_string(kWidth / 2 - 30) + "\" y=\"" +
         std::to_string(kHeight - 12) + "\" font-size=\"11\">interview position</text>\n";
  svg += "<text x=\"10\" y=\"" + std::to_string(kPad - 10) +
         "\" font-size=\"11\">cumulative codes (dashed: total, solid: unique)</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string regression_svg(const std::vector<metrics::SaturationReport>& reports,
                           const json& mse_pairs) {
  constexpr int kWidth = 640, kHeight = 420, kPad = 48;
  size_t max_pos = 1;
  double max_y = 1.0;
  for (const auto& r : reports) {
    max_pos = std::max(max_pos, r.counts.size());
    for (const auto& c : r.counts) {
      max_y = std::max(max_y, static_cast<double>(c.cumulative_unique));
    }
  }
  for (const auto& r : reports) {
    max_y = std::max(max_y, r.fit_unique.at(static_cast<double>(max_pos - 1)));
  }
  auto x_of = [&](double zero_based) {
    return kPad + zero_based / std::max<double>(1.0, static_cast<double>(max_pos) - 1.0) *
                      (kWidth - 2 * kPad);
  };
  auto y_of = [&](double count) {
    return kHeight - kPad - count / max_y * (kHeight - 2 * kPad);
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int color = 0;
  for (const auto& r : reports) {
    const char* col = kSeriesColors[color % 8];
    for (const auto& c : r.counts) {
      svg += "<circle cx=\"" + svg_number(x_of(static_cast<double>(c.position - 1))) +
             "\" cy=\"" + svg_number(y_of(static_cast<double>(c.cumulative_unique))) +
             "\" r=\"2.5\" fill=\"" + col + "\"/>\n";
    }
    svg += "<line x1=\"" + svg_number(x_of(0)) + "\" y1=\"" + svg_number(y_of(r.fit_unique.at(0))) +
           "\" x2=\"" + svg_number(x_of(static_cast<double>(max_pos - 1))) + "\" y2=\"" +
           svg_number(y_of(r.fit_unique.at(static_cast<double>(max_pos - 1)))) + "\" stroke=\"" +
           col + "\"/>\n";
    svg += "<text x=\"" + std::to_string(kPad + 6) + "\" y=\"" +
           std::to_string(kPad + 14 + 14 * color) + "\" fill=\"" + col + "\" font-size=\"11\">" +
           r.run_id + ": y = " + svg_number(r.fit_unique.slope) + "x + " +
           svg_number(r.fit_unique.intercept) + "</text>\n";
    ++color;
  }
  int y_text = kPad + 14 + 14 * color;
  for (const auto& pair : mse_pairs) {
    svg += "<text x=\"" + std::to_string(kPad + 6) + "\" y=\"" + std::to_string(y_text) +
           "\" font-size=\"11\">MSE(" + pair["a"].get<std::string>() + ", " +
           pair["b"].get<std::string>() + ") = " + svg_number(pair["mse"].get<double>()) +
           "</text>\n";
    y_text += 14;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

CommandResult cmd_report(const RunConfig& config, const std::string& out_dir_arg) {
  const std::string out_dir = out_dir_arg.empty() ? resolve_output_dir(config) : out_dir_arg;
  std::vector<metrics::SaturationReport> reports;
  std::vector<std::string> run_dirs;
  if (!fs::is_directory(out_dir)) throw InputError("output directory not found: " + out_dir);
  std::vector<fs::path> seq_dirs;
  for (const auto& seq_entry : fs::directory_iterator(out_dir)) {
    if (seq_entry.is_directory()) seq_dirs.push_back(seq_entry.path());
  }
  std::sort(seq_dirs.begin(), seq_dirs.end());
  for (const auto& seq_dir : seq_dirs) {
    std::vector<fs::path> iter_dirs;
    for (const auto& iter_entry : fs::directory_iterator(seq_dir)) {
      if (iter_entry.is_directory() && fs::exists(iter_entry.path() / kReportFile)) {
        iter_dirs.push_back(iter_entry.path());
      }
    }
    std::sort(iter_dirs.begin(), iter_dirs.end(), [](const fs::path& a, const fs::path& b) {
      auto key = [](const fs::path& p) {
        try {
          return std::stoi(p.filename().string());
        } catch (...) {
          return 0;
        }
      };
      return key(a) < key(b);
    });
    for (const auto& d : iter_dirs) {
      metrics::SaturationReport r = metrics::load_report_json((d / kReportFile).string());
      audit_report_against_csvs(d.string(), r);
      reports.push_back(std::move(r));
      run_dirs.push_back(d.string());
    }
  }
  if (reports.empty()) {
    throw InputError("no completed runs under " + out_dir + " (run `reduce` first)");
  }

  json runs = json::array();
  for (const auto& r : reports) {
    runs.push_back({{"run_id", r.run_id},
                    {"sequence", r.sequence_name},
                    {"iteration", r.iteration},
                    {"total_codes", r.total_codes},
                    {"unique_codes", r.unique_codes},
                    {"its", r.its},
                    {"its_display", metrics::format2(r.its)}});
  }

  json summary = {{"command", "report"}, {"runs", std::move(runs)}};

  if (reports.size() >= 2) {
    metrics::StabilitySummary stability = metrics::summarize_runs(reports);
    summary["stability"] = {{"its_values", stability.its_values},
                            {"its_values_full", stability.its_values_full},
                            {"mean", stability.mean},
                            {"sample_sd", stability.sample_sd},
                            {"cov_percent", stability.cov},
                            {"range", stability.range}};
  }

  json mse_pairs = json::array();
  for (size_t i = 0; i < reports.size(); ++i) {
    for (size_t j = i + 1; j < reports.size(); ++j) {
      int n = std::min(reports[i].fit_unique.n_points, reports[j].fit_unique.n_points);
      mse_pairs.push_back(
          {{"a", reports[i].run_id},
           {"b", reports[j].run_id},
           {"mse", metrics::mse_between_fits(reports[i].fit_unique, reports[j].fit_unique, n)}});
    }
  }
  summary["fit_mse"] = mse_pairs;

  // Curves CSV: one row per position, one (total, unique) column pair per run.
  size_t max_pos = 0;
  for (const auto& r : reports) max_pos = std::max(max_pos, r.counts.size());
  util::CsvRow header{"position"};
  for (const auto& r : reports) {
    header.push_back(r.run_id + ":cumulative_total");
    header.push_back(r.run_id + ":cumulative_unique");
  }
  std::vector<util::CsvRow> rows;
  for (size_t p = 0; p < max_pos; ++p) {
    util::CsvRow row{std::to_string(p + 1)};
    for (const auto& r : reports) {
      if (p < r.counts.size()) {
        row.push_back(std::to_string(r.counts[p].cumulative_total));
        row.push_back(std::to_string(r.counts[p].cumulative_unique));
      } else {
        row.push_back("");
        row.push_back("");
      }
    }
    rows.push_back(std::move(row));
  }
  util::csv_write((fs::path(out_dir) / "curves.csv").string(), header, rows);
  util::write_file((fs::path(out_dir) / "curves.svg").string(), curves_svg(reports));
  util::write_file((fs::path(out_dir) / "regression.svg").string(),
                   regression_svg(reports, mse_pairs));
  util::save_json_file((fs::path(out_dir) / "summary.json").string(), summary);

  CommandResult result;
  result.summary_json = summary.dump(2);
  return result;
}

std::string cmd_sequences_json(size_t n) {
  if (n == 0) throw InputError("sequences: n must be >= 1");
  json out = json::array();
  for (const auto& s : coder::builtin_sequences(n)) {
    out.push_back({{"name", s.name}, {"order", s.order}});
  }
  return out.dump(2);
}

CommandResult cmd_compile_judge(const RunConfig& config, const std::string& bank_path,
                                int64_t seed, const std::string& out_path) {
  // bank/out arrive from the caller (CLI), so they are taken as given
  // rather than resolved against the config directory.
  compiler::ExampleBank bank = compiler::load_example_bank(bank_path);
  auto gateway = make_judge_gateway(config);
  llm::LmClient lm = lm_client(config, *gateway);

  auto [train, test] = compiler::split(bank, 0.8, static_cast<uint64_t>(seed));
  compiler::CompileParams params;
  params.seed = static_cast<uint64_t>(seed);
  compiler::CompileOutcome outcome = compiler::compile(train, lm, lm, params);
  compiler::EvalResult test_eval = compiler::evaluate(outcome.prompt, test, lm);
  compiler::save_compiled_prompt(out_path, outcome.prompt);

  CommandResult result;
  result.warnings = outcome.warnings;
  json summary = json{{"command", "compile-judge"},
                             {"bank_size", bank.examples.size()},
                             {"similar_examples", bank.count(compiler::MeaningLabel::similar)},
                             {"different_examples", bank.count(compiler::MeaningLabel::different)},
                             {"train_size", train.size()},
                             {"test_size", test.size()},
                             {"demos", outcome.prompt.demos.size()},
                             {"validation_score", *outcome.prompt.validation_score},
                             {"test_accuracy", test_eval.accuracy},
                             {"test_parse_failures", test_eval.parse_failures},
                             {"candidate_scores", outcome.candidate_scores},
                             {"out", out_path}};
  if (!result.warnings.empty()) summary["warnings"] = result.warnings;
  result.summary_json = summary.dump(2);
  return result;
}

CommandResult cmd_eval_similarity(const RunConfig& config, const std::string& left_csv,
                                  const std::string& right_csv,
                                  const std::string& out_prefix) {
  auto left = model::read_unique_codebook_csv(left_csv);
  auto right = model::read_unique_codebook_csv(right_csv);
  if (left.empty() || right.empty()) throw InputError("eval-similarity: empty codebook");

  std::unique_ptr<simeval::EmbeddingProvider> provider;
  const std::string& p = config.embedding.provider;
  if (p == "fixture") {
    provider = simeval::make_fixture_provider(config.embedding.dimension);
  } else if (util::starts_with(p, "file:")) {
    provider = simeval::make_file_provider(resolve_path(config, p.substr(5)));
  } else if (p == "http") {
    simeval::HttpEmbeddingOptions options;
    options.base_url = config.embedding.endpoint;
    options.endpoint_path = config.embedding.endpoint_path;
    options.model_id = config.embedding.model_id;
    options.api_key = getenv_or_empty(config.embedding.api_key_env);
    provider = simeval::make_http_provider(std::move(options));
  } else {
    throw ConfigError("unknown embedding provider: " + p);
  }

  auto texts_of = [](const std::vector<model::CodebookEntry>& entries) {
    std::vector<std::string> texts;
    texts.reserve(entries.size());
    for (const auto& e : entries) texts.push_back(model::code_pair_text(e.code));
    return texts;
  };
  auto labels_of = [](const std::vector<model::CodebookEntry>& entries) {
    std::vector<std::string> labels;
    labels.reserve(entries.size());
    for (const auto& e : entries) labels.push_back(e.code.name);
    return labels;
  };

  std::vector<std::string> left_texts = texts_of(left), right_texts = texts_of(right);
  auto left_vecs = provider->embed(left_texts);
  auto right_vecs = provider->embed(right_texts);

  simeval::SimilarityMatrix matrix =
      simeval::cosine_matrix(labels_of(left), left_vecs, labels_of(right), right_vecs);
  simeval::DiagonalOrdering ordering = simeval::optimal_diagonal_ordering(matrix);

  const std::string& base = out_prefix;
  simeval::export_matrix_csv(ordering.reordered, base + ".csv");
  simeval::export_matrix_svg(ordering.reordered, base + ".svg",
                             config.embedding.highlight_threshold);

  CommandResult result;
  result.summary_json =
      json{{"command", "eval-similarity"},
           {"rows", matrix.rows()},
           {"cols", matrix.cols()},
           {"provider", provider->name()},
           {"assignment_score", ordering.annotated.ordering->score},
           {"matched_pairs",
            std::count_if(ordering.annotated.ordering->row_to_col.begin(),
                          ordering.annotated.ordering->row_to_col.end(),
                          [](int c) { return c >= 0; })},
           {"matrix_csv", base + ".csv"},
           {"matrix_svg", base + ".svg"}}
          .dump(2);
  return result;
}

}  // namespace codesat::orch
