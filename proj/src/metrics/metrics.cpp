#include "metrics/metrics.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "util/errors.hpp"
#include "util/jsonx.hpp"

namespace codesat::metrics {

using nlohmann::json;

double its_ratio(size_t unique_count, size_t total_count) {
  if (total_count == 0) throw InputError("its_ratio: total count is zero");
  if (unique_count == 0) throw InputError("its_ratio: unique count is zero");
  if (unique_count > total_count) {
    throw InputError("its_ratio: unique (" + std::to_string(unique_count) +
                     ") exceeds total (" + std::to_string(total_count) + ")");
  }
  return static_cast<double>(unique_count) / static_cast<double>(total_count);
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string format2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

LinearFit linear_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw InputError("linear_fit: need at least 2 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(points.size());
  mean_y /= static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0) throw InputError("linear_fit: all x values are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.n_points = static_cast<int>(points.size());
  return fit;
}

namespace {
LinearFit fit_counts(const std::vector<model::PositionCount>& counts, bool unique) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    double y = static_cast<double>(unique ? counts[i].cumulative_unique
                                          : counts[i].cumulative_total);
    pts.emplace_back(static_cast<double>(i), y);  // zero-based x
  }
  return linear_fit(pts);
}
}  // namespace

LinearFit fit_cumulative_totals(const std::vector<model::PositionCount>& counts) {
  return fit_counts(counts, false);
}

LinearFit fit_cumulative_uniques(const std::vector<model::PositionCount>& counts) {
  return fit_counts(counts, true);
}

double mse_between_fits(const LinearFit& a, const LinearFit& b, int n_points) {
  if (n_points < 1) throw InputError("mse_between_fits: need n >= 1");
  double acc = 0.0;
  for (int x = 0; x < n_points; ++x) {
    double d = a.at(x) - b.at(x);
    acc += d * d;
  }
  return acc / static_cast<double>(n_points);
}

double cov_percent(const std::vector<double>& values) {
  if (values.size() < 2) throw InputError("cov_percent: need at least 2 values");
  double mean = 0.0;
  for (double v : values) {
    if (v <= 0.0) throw InputError("cov_percent: values must be positive");
    mean += v;
  }
  mean /= static_cast<double>(values.size());
  if (mean <= 0.0) throw InputError("cov_percent: mean must be positive");
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sample_sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return 100.0 * sample_sd / mean;
}

SaturationReport build_report(std::string run_id, std::string sequence_name, int iteration,
                              const std::vector<model::PositionCount>& counts) {
  if (counts.empty()) throw InputError("build_report: counts are empty");
  SaturationReport r;
  r.run_id = std::move(run_id);
  r.sequence_name = std::move(sequence_name);
  r.iteration = iteration;
  r.counts = counts;
  r.total_codes = counts.back().cumulative_total;
  r.unique_codes = counts.back().cumulative_unique;
  r.its = its_ratio(r.unique_codes, r.total_codes);
  r.fit_total = fit_cumulative_totals(counts);
  r.fit_unique = fit_cumulative_uniques(counts);
  return r;
}

StabilitySummary summarize_runs(const std::vector<SaturationReport>& reports) {
  if (reports.size() < 2) {
    throw InputError("summarize_runs: need at least 2 runs for a stability summary");
  }
  StabilitySummary s;
  for (const auto& r : reports) {
    s.its_values_full.push_back(r.its);
    s.its_values.push_back(round2(r.its));
  }
  double mean = 0.0;
  for (double v : s.its_values) mean += v;
  mean /= static_cast<double>(s.its_values.size());
  double ss = 0.0;
  double lo = s.its_values.front(), hi = s.its_values.front();
  for (double v : s.its_values) {
    ss += (v - mean) * (v - mean);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  s.mean = mean;
  s.sample_sd = std::sqrt(ss / static_cast<double>(s.its_values.size() - 1));
  s.cov = cov_percent(s.its_values);
  s.range = hi - lo;
  return s;
}

namespace {
json fit_to_json(const LinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"n_points", f.n_points}};
}
LinearFit fit_from_json(const json& j) {
  return {j.at("slope").get<double>(), j.at("intercept").get<double>(),
          j.at("n_points").get<int>()};
}
}  // namespace

void save_report_json(const std::string& path, const SaturationReport& report) {
  json counts = json::array();
  for (const auto& c : report.counts) {
    counts.push_back({{"position", c.position},
                      {"cumulative_total", c.cumulative_total},
                      {"cumulative_unique", c.cumulative_unique}});
  }
  json root = {{"run_id", report.run_id},
               {"sequence", report.sequence_name},
               {"iteration", report.iteration},
               {"total_codes", report.total_codes},
               {"unique_codes", report.unique_codes},
               {"its", report.its},
               {"its_display", format2(report.its)},
               {"fit_total", fit_to_json(report.fit_total)},
               {"fit_unique", fit_to_json(report.fit_unique)},
               {"counts", std::move(counts)}};
  util::save_json_file(path, root);
}

SaturationReport load_report_json(const std::string& path) {
  json root = util::load_json_file(path);
  SaturationReport r;
  try {
    r.run_id = root.at("run_id").get<std::string>();
    r.sequence_name = root.at("sequence").get<std::string>();
    r.iteration = root.at("iteration").get<int>();
    r.total_codes = root.at("total_codes").get<size_t>();
    r.unique_codes = root.at("unique_codes").get<size_t>();
    r.its = root.at("its").get<double>();
    r.fit_total = fit_from_json(root.at("fit_total"));
    r.fit_unique = fit_from_json(root.at("fit_unique"));
    for (const auto& c : root.at("counts")) {
      r.counts.push_back({c.at("position").get<int>(), c.at("cumulative_total").get<size_t>(),
                          c.at("cumulative_unique").get<size_t>()});
    }
  } catch (const json::exception& e) {
    throw InputError("report JSON is malformed: " + path + ": " + e.what());
  }
  return r;
}

}  // namespace codesat::metrics
