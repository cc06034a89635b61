#include "codesat/codesat.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "metrics/metrics.hpp"
#include "model/codebook.hpp"
#include "orchestrator/config.hpp"
#include "orchestrator/orchestrator.hpp"
#include "util/errors.hpp"

using codesat::Error;

struct codesat_ctx {
  codesat::orch::RunConfig config = codesat::orch::default_config();
  std::string last_error;
};

namespace {

codesat_status status_of(const Error& e) {
  switch (e.exit_code()) {
    case 2: return CODESAT_ERR_CONFIG;
    case 3: return CODESAT_ERR_PROVIDER;
    case 4: return CODESAT_ERR_JUDGE;
    default: return CODESAT_ERR_INTERNAL;
  }
}

void set_error(codesat_ctx* ctx, const std::string& message) {
  if (ctx) ctx->last_error = message;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
codesat_status guarded(codesat_ctx* ctx, Fn&& fn) {
  try {
    if (ctx) ctx->last_error.clear();
    fn();
    return CODESAT_OK;
  } catch (const Error& e) {
    set_error(ctx, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_error(ctx, std::string("internal: ") + e.what());
    return CODESAT_ERR_INTERNAL;
  } catch (...) {
    set_error(ctx, "internal: unknown exception");
    return CODESAT_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* codesat_version(void) { return "0.1.0"; }

codesat_status codesat_ctx_new(codesat_ctx** out_ctx) {
  if (!out_ctx) return CODESAT_ERR_CONFIG;
  *out_ctx = new (std::nothrow) codesat_ctx();
  return *out_ctx ? CODESAT_OK : CODESAT_ERR_INTERNAL;
}

void codesat_ctx_free(codesat_ctx* ctx) { delete ctx; }

const char* codesat_ctx_error(const codesat_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

codesat_status codesat_ctx_load_config(codesat_ctx* ctx, const char* path) {
  if (!ctx || !path) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] { ctx->config = codesat::orch::load_config(path); });
}

codesat_status codesat_ctx_set_option(codesat_ctx* ctx, const char* key, const char* value) {
  if (!ctx || !key || !value) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] { codesat::orch::apply_option(ctx->config, key, value); });
}

codesat_status codesat_cmd_code(codesat_ctx* ctx, int force, char** out_summary) {
  if (!ctx) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto result = codesat::orch::cmd_code(ctx->config, force != 0);
    if (out_summary) *out_summary = dup_string(result.summary_json);
  });
}

codesat_status codesat_cmd_reduce(codesat_ctx* ctx, const char* run_dir, int force,
                                  char** out_summary) {
  if (!ctx || !run_dir) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto result = codesat::orch::cmd_reduce(ctx->config, run_dir, force != 0);
    if (out_summary) *out_summary = dup_string(result.summary_json);
  });
}

codesat_status codesat_cmd_report(codesat_ctx* ctx, const char* out_dir, char** out_summary) {
  if (!ctx || !out_dir) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto result = codesat::orch::cmd_report(ctx->config, out_dir);
    if (out_summary) *out_summary = dup_string(result.summary_json);
  });
}

codesat_status codesat_cmd_compile_judge(codesat_ctx* ctx, const char* bank_path, int64_t seed,
                                         const char* out_path, char** out_summary) {
  if (!ctx || !bank_path || !out_path) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto result = codesat::orch::cmd_compile_judge(ctx->config, bank_path, seed, out_path);
    if (out_summary) *out_summary = dup_string(result.summary_json);
  });
}

codesat_status codesat_cmd_eval_similarity(codesat_ctx* ctx, const char* left_csv,
                                           const char* right_csv, const char* out_prefix,
                                           char** out_summary) {
  if (!ctx || !left_csv || !right_csv || !out_prefix) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto result =
        codesat::orch::cmd_eval_similarity(ctx->config, left_csv, right_csv, out_prefix);
    if (out_summary) *out_summary = dup_string(result.summary_json);
  });
}

codesat_status codesat_sequences_json(codesat_ctx* ctx, size_t n, char** out_json) {
  if (!out_json) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] { *out_json = dup_string(codesat::orch::cmd_sequences_json(n)); });
}

void codesat_string_free(char* s) { std::free(s); }

codesat_status codesat_its_ratio(codesat_ctx* ctx, uint64_t unique_count, uint64_t total_count,
                                 double* out_ratio) {
  if (!out_ratio) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    *out_ratio = codesat::metrics::its_ratio(static_cast<size_t>(unique_count),
                                             static_cast<size_t>(total_count));
  });
}

codesat_status codesat_cov_percent(codesat_ctx* ctx, const double* values, size_t count,
                                   double* out_cov) {
  if (!values || !out_cov) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    std::vector<double> v(values, values + count);
    *out_cov = codesat::metrics::cov_percent(v);
  });
}

codesat_status codesat_linear_fit(codesat_ctx* ctx, const double* xs, const double* ys,
                                  size_t count, double* out_slope, double* out_intercept) {
  if (!xs || !ys || !out_slope || !out_intercept) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    std::vector<std::pair<double, double>> points;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i) points.emplace_back(xs[i], ys[i]);
    auto fit = codesat::metrics::linear_fit(points);
    *out_slope = fit.slope;
    *out_intercept = fit.intercept;
  });
}

codesat_status codesat_mse_between_fits(codesat_ctx* ctx, double slope_a, double intercept_a,
                                        double slope_b, double intercept_b, int n_points,
                                        double* out_mse) {
  if (!out_mse) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    codesat::metrics::LinearFit a{slope_a, intercept_a, n_points};
    codesat::metrics::LinearFit b{slope_b, intercept_b, n_points};
    *out_mse = codesat::metrics::mse_between_fits(a, b, n_points);
  });
}

codesat_status codesat_its_from_counts_csv(codesat_ctx* ctx, const char* counts_csv,
                                           double* out_ratio, uint64_t* out_unique,
                                           uint64_t* out_total) {
  if (!counts_csv || !out_ratio) return CODESAT_ERR_CONFIG;
  return guarded(ctx, [&] {
    auto counts = codesat::model::read_counts_csv(counts_csv);
    if (counts.empty()) throw codesat::InputError("counts csv has no rows");
    const auto& last = counts.back();
    *out_ratio = codesat::metrics::its_ratio(last.cumulative_unique, last.cumulative_total);
    if (out_unique) *out_unique = last.cumulative_unique;
    if (out_total) *out_total = last.cumulative_total;
  });
}

}  // extern "C"
