#include <doctest.h>

#include <cmath>

#include "metrics/metrics.hpp"
#include "support/tmpdir.hpp"
#include "util/errors.hpp"
#include "util/rng.hpp"

using namespace codesat;

TEST_CASE("its ratio: published cells and limits") {
  CHECK(metrics::format2(metrics::its_ratio(67, 235)) == "0.29");
  CHECK(metrics::format2(metrics::its_ratio(71, 175)) == "0.41");
  CHECK(metrics::its_ratio(40, 40) == 1.0);
  CHECK_THROWS_AS(metrics::its_ratio(1, 0), InputError);
  CHECK_THROWS_AS(metrics::its_ratio(0, 10), InputError);
  CHECK_THROWS_AS(metrics::its_ratio(11, 10), InputError);
}

TEST_CASE("linear fit recovers exact lines") {
  auto fit = metrics::linear_fit({{0, 1}, {1, 3}, {2, 5}});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points == 3);

  auto flat = metrics::linear_fit({{0, 4}, {1, 4}, {2, 4}});
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.intercept == doctest::Approx(4.0));

  CHECK_THROWS_AS(metrics::linear_fit({{1, 1}}), InputError);
  CHECK_THROWS_AS(metrics::linear_fit({{1, 1}, {1, 2}}), InputError);
}

namespace {
// Independent OLS oracle: solves the normal equations directly with
// long-double accumulation.
std::pair<double, double> normal_equations(const std::vector<std::pair<double, double>>& pts) {
  long double n = static_cast<long double>(pts.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += static_cast<long double>(x) * x;
    sxy += static_cast<long double>(x) * y;
  }
  long double det = n * sxx - sx * sx;
  long double slope = (n * sxy - sx * sy) / det;
  long double intercept = (sy * sxx - sx * sxy) / det;
  return {static_cast<double>(slope), static_cast<double>(intercept)};
}
}  // namespace

TEST_CASE("fit of a concave cumulative fixture matches the normal-equations oracle") {
  // shaped like a saturating unique-codes curve
  std::vector<size_t> uniques{15, 25, 33, 40, 46, 52, 57, 61, 64, 67, 69, 70};
  std::vector<std::pair<double, double>> pts;
  std::vector<model::PositionCount> counts;
  for (size_t i = 0; i < uniques.size(); ++i) {
    pts.emplace_back(static_cast<double>(i), static_cast<double>(uniques[i]));
    counts.push_back({static_cast<int>(i) + 1, 0, uniques[i]});
  }
  auto fit = metrics::fit_cumulative_uniques(counts);
  auto [slope, intercept] = normal_equations(pts);
  CHECK(fit.slope == doctest::Approx(slope).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(intercept).epsilon(1e-12));
}

TEST_CASE("OLS residual orthogonality on random point sets") {
  util::Rng rng(31415);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::pair<double, double>> pts;
    size_t n = 3 + rng.bounded(10);
    for (size_t i = 0; i < n; ++i) {
      pts.emplace_back(static_cast<double>(i), rng.uniform01() * 100.0);
    }
    auto fit = metrics::linear_fit(pts);
    double sum_r = 0, sum_xr = 0, scale = 0;
    for (auto [x, y] : pts) {
      double r = y - fit.at(x);
      sum_r += r;
      sum_xr += x * r;
      scale += std::abs(y);
    }
    CHECK(std::abs(sum_r) <= 1e-6 * std::max(1.0, scale));
    CHECK(std::abs(sum_xr) <= 1e-6 * std::max(1.0, scale) * static_cast<double>(n));
  }
}

TEST_CASE("mse between the published fits reconciles at 3.10 under zero-based x") {
  metrics::LinearFit a{4.68, 21.44, 12};
  metrics::LinearFit b{4.47, 20.99, 12};
  CHECK(metrics::mse_between_fits(a, b, 12) == doctest::Approx(3.10).epsilon(0.01 / 3.10));
  CHECK(metrics::mse_between_fits(a, a, 12) == 0.0);
  CHECK(metrics::mse_between_fits(a, b, 1) ==
        doctest::Approx((21.44 - 20.99) * (21.44 - 20.99)));
  CHECK(metrics::mse_between_fits(a, b, 12) == metrics::mse_between_fits(b, a, 12));
  CHECK_THROWS_AS(metrics::mse_between_fits(a, b, 0), InputError);
}

TEST_CASE("cov percent reproduces the published dispersion figures") {
  CHECK(metrics::cov_percent({0.40, 0.43, 0.43, 0.42, 0.40, 0.42, 0.39}) ==
        doctest::Approx(3.88).epsilon(0.01 / 3.88));
  CHECK(metrics::cov_percent({0.41, 0.30, 0.28, 0.24, 0.40, 0.39, 0.47}) ==
        doctest::Approx(23.34).epsilon(0.01 / 23.34));
  CHECK(metrics::cov_percent({0.42, 0.41, 0.43, 0.40, 0.43, 0.42}) ==
        doctest::Approx(2.79).epsilon(0.01 / 2.79));
  CHECK(metrics::cov_percent({0.34, 0.28, 0.35, 0.25, 0.42, 0.40}) ==
        doctest::Approx(19.4).epsilon(0.1 / 19.4));
  CHECK(metrics::cov_percent({0.5, 0.5, 0.5}) == 0.0);
  CHECK_THROWS_AS(metrics::cov_percent({0.5}), InputError);
  CHECK_THROWS_AS(metrics::cov_percent({0.5, -0.1}), InputError);
}

TEST_CASE("cov percent is scale invariant") {
  util::Rng rng(777);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> xs;
    size_t n = 2 + rng.bounded(10);
    for (size_t i = 0; i < n; ++i) xs.push_back(0.1 + rng.uniform01());
    double c = 0.01 + rng.uniform01() * 99.0;
    std::vector<double> scaled;
    for (double x : xs) scaled.push_back(c * x);
    CHECK(metrics::cov_percent(scaled) ==
          doctest::Approx(metrics::cov_percent(xs)).epsilon(1e-9));
  }
}

TEST_CASE("report construction and summary statistics") {
  std::vector<model::PositionCount> counts{{1, 15, 15}, {2, 31, 25}, {3, 45, 33}};
  auto report = metrics::build_report("identity/1", "identity", 1, counts);
  CHECK(report.total_codes == 45);
  CHECK(report.unique_codes == 33);
  CHECK(report.its == doctest::Approx(33.0 / 45.0));
  CHECK(report.fit_total.n_points == 3);

  SUBCASE("summary over the published sequence columns") {
    auto reports_from = [](const std::vector<std::pair<size_t, size_t>>& cells) {
      std::vector<metrics::SaturationReport> rs;
      int i = 0;
      for (auto [unique, total] : cells) {
        std::vector<model::PositionCount> c{{1, total / 2, unique / 2}, {2, total, unique}};
        rs.push_back(metrics::build_report("#" + std::to_string(++i), "seq", i, c));
      }
      return rs;
    };
    // compiled-judge sequence column as (unique,total) pairs
    auto compiled = reports_from({{70, 166}, {70, 169}, {81, 187}, {65, 163}, {72, 168}, {74, 177}});
    auto summary = metrics::summarize_runs(compiled);
    CHECK(summary.cov == doctest::Approx(2.79).epsilon(0.01 / 2.79));
    CHECK(summary.range == doctest::Approx(0.03).epsilon(1e-9));
    CHECK(summary.its_values.size() == 6);

    auto p2 = reports_from({{57, 166}, {48, 169}, {66, 187}, {40, 163}, {71, 168}, {71, 177}});
    CHECK(metrics::summarize_runs(p2).cov == doctest::Approx(19.4).epsilon(0.1 / 19.4));
  }
  SUBCASE("a single run cannot be summarized") {
    CHECK_THROWS_AS(metrics::summarize_runs({report}), InputError);
  }
}

TEST_CASE("its bounds for completed reductions") {
  // its = 1 iff duplicates log empty, lower bound 1/total
  CHECK(metrics::its_ratio(1, 50) == doctest::Approx(0.02));
  CHECK(metrics::its_ratio(50, 50) == 1.0);
}

TEST_CASE("report json round trip") {
  testing::TmpDir tmp("report");
  std::vector<model::PositionCount> counts{{1, 10, 10}, {2, 20, 15}, {3, 30, 18}};
  auto report = metrics::build_report("seq/2", "seq", 2, counts);
  std::string path = tmp.str("report.json");
  metrics::save_report_json(path, report);
  auto loaded = metrics::load_report_json(path);
  CHECK(loaded.run_id == report.run_id);
  CHECK(loaded.its == report.its);
  CHECK(loaded.counts == report.counts);
  CHECK(loaded.fit_unique.slope == report.fit_unique.slope);
}
