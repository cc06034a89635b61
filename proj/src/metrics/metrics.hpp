#pragma once

#include <string>
#include <vector>

#include "model/codebook.hpp"

namespace codesat::metrics {

// Inductive thematic saturation: unique codes / total codes, in (0, 1].
// Stored at full precision; summaries display it rounded to 2 decimals.
double its_ratio(size_t unique_count, size_t total_count);

double round2(double v);
std::string format2(double v);  // fixed 2-decimal display form

struct LinearFit {
  double slope = 0.0;      // codes per interview position
  double intercept = 0.0;  // codes
  int n_points = 0;

  double at(double x) const { return slope * x + intercept; }
};

// Ordinary least squares over (x, y) points; x is the zero-based interview
// index when fitting cumulative curves.
LinearFit linear_fit(const std::vector<std::pair<double, double>>& points);
LinearFit fit_cumulative_totals(const std::vector<model::PositionCount>& counts);
LinearFit fit_cumulative_uniques(const std::vector<model::PositionCount>& counts);

// Mean over x in {0..n-1} of the squared gap between the two fitted lines.
double mse_between_fits(const LinearFit& a, const LinearFit& b, int n_points);

// 100 * sample standard deviation (n-1 denominator) / mean. Needs >= 2
// positive values.
double cov_percent(const std::vector<double>& values);

struct SaturationReport {
  std::string run_id;
  std::string sequence_name;
  int iteration = 0;
  std::vector<model::PositionCount> counts;
  size_t total_codes = 0;
  size_t unique_codes = 0;
  double its = 0.0;
  LinearFit fit_total;
  LinearFit fit_unique;
};

SaturationReport build_report(std::string run_id, std::string sequence_name, int iteration,
                              const std::vector<model::PositionCount>& counts);

struct StabilitySummary {
  std::vector<double> its_values;          // as summarized (2-decimal display values)
  std::vector<double> its_values_full;     // full-precision ratios
  double mean = 0.0;
  double sample_sd = 0.0;
  double cov = 0.0;    // percent
  double range = 0.0;  // max - min of display values
};

// Cross-run stability over the reports' ITS values. Statistics run on the
// 2-decimal display values, the same way the published tables derive their
// dispersion figures; full-precision values ride along.
StabilitySummary summarize_runs(const std::vector<SaturationReport>& reports);

void save_report_json(const std::string& path, const SaturationReport& report);
SaturationReport load_report_json(const std::string& path);

}  // namespace codesat::metrics
