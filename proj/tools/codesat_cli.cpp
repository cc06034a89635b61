// codesat command-line front end. Everything goes through the C API in
// codesat/codesat.h; status codes double as exit codes (0 ok, 2 config,
// 3 provider, 4 judge contract).

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codesat/codesat.h"

namespace {

struct CtxDeleter {
  void operator()(codesat_ctx* c) const { codesat_ctx_free(c); }
};
using CtxPtr = std::unique_ptr<codesat_ctx, CtxDeleter>;

struct StringDeleter {
  void operator()(char* s) const { codesat_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

int fail(const codesat_ctx* ctx, codesat_status status) {
  const char* msg = codesat_ctx_error(ctx);
  std::fprintf(stderr, "error: %s\n", (msg && *msg) ? msg : "unspecified failure");
  return static_cast<int>(status);
}

int print_summary(char* summary) {
  CStr owned(summary);
  if (owned) std::printf("%s\n", owned.get());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codesat: LLM initial coding, codebook reduction and saturation metrics"};
  app.require_subcommand(1);
  // global flags may appear after the subcommand

  std::string config_path;
  std::string out_dir;
  std::string judge_mode;
  int64_t seed = 0;
  bool force = false;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON run configuration")->envname("CODESAT_CONFIG");
  app.add_option("--out", out_dir, "output directory (overrides config output_dir)");
  app.add_option("--judge", judge_mode,
                 "judge mode: zero-shot|compiled|stub:always-similar|stub:always-different|"
                 "stub:lookup:<file>");
  app.add_option("--seed", seed, "seed for seeded operations")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_flag("--force", force, "redo completed cells");

  auto* cmd_code = app.add_subcommand("code", "run initial coding over the experiment matrix");
  cmd_code->fallthrough();

  auto* cmd_reduce = app.add_subcommand("reduce", "reduce one coded cell to unique codes");
  cmd_reduce->fallthrough();
  std::string run_dir;
  cmd_reduce->add_option("--run", run_dir, "cell directory (<out>/<sequence>/<iteration>)")
      ->required();

  auto* cmd_compile = app.add_subcommand("compile-judge", "compile the few-shot pairwise judge");
  cmd_compile->fallthrough();
  std::string bank_path, compile_out;
  cmd_compile->add_option("--bank", bank_path, "labeled example bank (JSON array)")->required();
  cmd_compile->add_option("--out", compile_out, "where to write the compiled prompt")->required();

  auto* cmd_its = app.add_subcommand("its", "compute the saturation ratio");
  cmd_its->fallthrough();
  uint64_t its_unique = 0, its_total = 0;
  std::string counts_csv;
  auto* opt_unique = cmd_its->add_option("--unique", its_unique, "unique code count");
  auto* opt_total = cmd_its->add_option("--total", its_total, "total code count");
  cmd_its->add_option("--counts", counts_csv, "counts CSV from a reduction");
  opt_unique->needs(opt_total);

  auto* cmd_eval = app.add_subcommand("eval-similarity",
                                      "cosine similarity matrix between two codebooks");
  cmd_eval->fallthrough();
  std::string left_csv, right_csv, out_prefix = "similarity";
  std::string provider;
  cmd_eval->add_option("--left", left_csv, "left unique codebook CSV")->required();
  cmd_eval->add_option("--right", right_csv, "right unique codebook CSV")->required();
  cmd_eval->add_option("--out-prefix", out_prefix, "output prefix for .csv/.svg");
  cmd_eval->add_option("--provider", provider, "embedding provider: fixture|file:<path>|http");

  auto* cmd_report = app.add_subcommand("report", "assemble cross-run summary and curves");
  cmd_report->fallthrough();

  auto* cmd_sequences = app.add_subcommand("sequences", "emit built-in analysis sequences");
  cmd_sequences->fallthrough();
  size_t seq_n = 12;
  cmd_sequences->add_option("--n", seq_n, "corpus size (built-in comparison orders need 12)");

  CLI11_PARSE(app, argc, argv);

  codesat_ctx* raw = nullptr;
  if (codesat_ctx_new(&raw) != CODESAT_OK) {
    std::fprintf(stderr, "error: cannot allocate context\n");
    return 1;
  }
  CtxPtr ctx(raw);

  codesat_status st = CODESAT_OK;
  if (!config_path.empty()) {
    st = codesat_ctx_load_config(ctx.get(), config_path.c_str());
    if (st != CODESAT_OK) return fail(ctx.get(), st);
  }
  auto set_option = [&](const char* key, const std::string& value) {
    if (st == CODESAT_OK && !value.empty()) {
      st = codesat_ctx_set_option(ctx.get(), key, value.c_str());
    }
  };
  set_option("output_dir", out_dir);
  set_option("judge", judge_mode);
  set_option("provider", provider);
  if (st == CODESAT_OK && seed_set) {
    st = codesat_ctx_set_option(ctx.get(), "seed", std::to_string(seed).c_str());
  }
  if (st != CODESAT_OK) return fail(ctx.get(), st);

  char* summary = nullptr;

  if (cmd_code->parsed()) {
    st = codesat_cmd_code(ctx.get(), force ? 1 : 0, &summary);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(summary);
  }

  if (cmd_reduce->parsed()) {
    st = codesat_cmd_reduce(ctx.get(), run_dir.c_str(), force ? 1 : 0, &summary);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(summary);
  }

  if (cmd_compile->parsed()) {
    st = codesat_cmd_compile_judge(ctx.get(), bank_path.c_str(), seed, compile_out.c_str(),
                                   &summary);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(summary);
  }

  if (cmd_its->parsed()) {
    double ratio = 0.0;
    uint64_t unique = its_unique, total = its_total;
    if (!counts_csv.empty()) {
      st = codesat_its_from_counts_csv(ctx.get(), counts_csv.c_str(), &ratio, &unique, &total);
    } else if (*opt_unique && *opt_total) {
      st = codesat_its_ratio(ctx.get(), its_unique, its_total, &ratio);
    } else {
      std::fprintf(stderr, "error: its needs --counts or --unique/--total\n");
      return 2;
    }
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    std::printf("{\"unique\": %" PRIu64 ", \"total\": %" PRIu64
                ", \"its\": %.17g, \"its_display\": \"%.2f\"}\n",
                unique, total, ratio, ratio);
    return 0;
  }

  if (cmd_eval->parsed()) {
    st = codesat_cmd_eval_similarity(ctx.get(), left_csv.c_str(), right_csv.c_str(),
                                     out_prefix.c_str(), &summary);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(summary);
  }

  if (cmd_report->parsed()) {
    st = codesat_cmd_report(ctx.get(), out_dir.c_str(), &summary);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(summary);
  }

  if (cmd_sequences->parsed()) {
    char* json_text = nullptr;
    st = codesat_sequences_json(ctx.get(), seq_n, &json_text);
    if (st != CODESAT_OK) return fail(ctx.get(), st);
    return print_summary(json_text);
  }

  return 0;
}
