#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hrgap/errors.hpp"
#include "hrgap/evaluator.hpp"
#include "hrgap/gap_protocol.hpp"
#include "test_support.hpp"

using hrgap::BenchmarkConfig;
using hrgap::Index;
using hrgap::Method;
using testutil::make_series;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> sinusoid(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 80.0 + 20.0 * std::sin(0.15 * i);
  return v;
}

std::vector<double> ramp(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 100.0 + 60.0 * i;
  return v;
}

bool same_cell(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

TEST_CASE("config validation") {
  BenchmarkConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  auto expect_reject = [](auto mutate) {
    BenchmarkConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), hrgap::ConfigError);
  };
  expect_reject([](auto& c) { c.gap_sizes_minutes.clear(); });
  expect_reject([](auto& c) { c.gap_sizes_minutes = {5.0, -1.0}; });
  expect_reject([](auto& c) { c.methods.clear(); });
  expect_reject([](auto& c) { c.spacing_minutes = 0.0; });
  expect_reject([](auto& c) { c.n_bins = 0; });
  expect_reject([](auto& c) { c.dt_seconds = -60.0; });
  expect_reject([](auto& c) { c.knn_k = 0; });
  expect_reject([](auto& c) { c.knn_epsilon = 0.0; });
}

TEST_CASE("result tables have the contracted shape") {
  const auto series = make_series(sinusoid(200), 0.0, 60.0, "watch");
  BenchmarkConfig cfg;
  const auto result = hrgap::run_benchmark({series}, cfg);

  REQUIRE(result.tables.size() == 2);
  CHECK(result.tables[0].gap_minutes == 5.0);
  CHECK(result.tables[1].gap_minutes == 15.0);
  for (const auto& table : result.tables) {
    CHECK(table.dataset_label == "watch");
    REQUIRE(table.methods.size() == 4);
    REQUIRE(table.summaries.size() == 4);
    CHECK(table.cells.rows() == 5);
    CHECK(table.cells.cols() == 4);
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 4; ++c) CHECK(std::isfinite(table.cells(r, c)));
    }
    const auto plan = hrgap::plan_gaps(series, table.gap_minutes, cfg.spacing_minutes);
    for (const auto& s : table.summaries) {
      CHECK(s.n_gaps_scored == plan.windows.size());
      CHECK(s.n_gaps_skipped == 0);
    }
  }
  CHECK(result.series_notes.empty());
  CHECK_FALSE(result.gap_records.empty());
}

TEST_CASE("summary means equal a flat recomputation over the audit records") {
  // Two series under one label: their per-gap scores must pool into a single
  // average where every gap weighs equally.
  const auto a = make_series(sinusoid(150), 0.0, 60.0, "w");
  const auto b = make_series(sinusoid(90), 1e6, 60.0, "w");
  BenchmarkConfig cfg;
  const auto result = hrgap::run_benchmark({a, b}, cfg);

  for (const auto& table : result.tables) {
    for (std::size_t mi = 0; mi < table.methods.size(); ++mi) {
      const auto& summary = table.summaries[mi];
      double sum_rmse = 0.0, sum_mae = 0.0, sum_mape = 0.0, sum_jsd = 0.0, sum_cdt = 0.0;
      std::size_t count = 0, n_cdt = 0;
      for (const auto& rec : result.gap_records) {
        if (rec.dataset != table.dataset_label || rec.gap_minutes != table.gap_minutes ||
            rec.method != table.methods[mi]) {
          continue;
        }
        sum_rmse += rec.score.rmse;
        sum_mae += rec.score.mae;
        sum_mape += rec.score.mape;
        sum_jsd += rec.score.jsd;
        if (rec.score.cdt) {
          sum_cdt += *rec.score.cdt;
          ++n_cdt;
        }
        ++count;
      }
      REQUIRE(count == summary.n_gaps_scored);
      REQUIRE(count > 0);
      const auto n = static_cast<double>(count);
      // Same accumulation order as the production summary, so equality is exact.
      CHECK(summary.mean_rmse == sum_rmse / n);
      CHECK(summary.mean_mae == sum_mae / n);
      CHECK(summary.mean_mape == sum_mape / n);
      CHECK(summary.mean_jsd == sum_jsd / n);
      CHECK(summary.n_cdt_absent == count - n_cdt);
      if (n_cdt > 0) {
        REQUIRE(summary.mean_cdt.has_value());
        CHECK(*summary.mean_cdt == sum_cdt / static_cast<double>(n_cdt));
      } else {
        CHECK_FALSE(summary.mean_cdt.has_value());
      }
      CHECK(table.cells(0, static_cast<Index>(mi)) == summary.mean_rmse);
      CHECK(table.cells(4, static_cast<Index>(mi)) == summary.mean_jsd);
    }
  }
}

TEST_CASE("linear and pchip score zero on an exactly linear series") {
  const auto series = make_series(ramp(120));
  BenchmarkConfig cfg;
  for (const Method method : {Method::linear, Method::pchip}) {
    for (const double gap : {5.0, 15.0}) {
      const auto s = hrgap::evaluate_method(series, gap, method, cfg);
      CHECK(s.n_gaps_scored == hrgap::plan_gaps(series, gap, 1.0).windows.size());
      CHECK(s.n_gaps_skipped == 0);
      CHECK(s.mean_rmse == 0.0);
      CHECK(s.mean_mae == 0.0);
      CHECK(s.mean_mape == 0.0);
      CHECK(s.mean_jsd == 0.0);
      REQUIRE(s.mean_cdt.has_value());
      CHECK(*s.mean_cdt == 0.0);
      REQUIRE(s.pooled_cdt.has_value());
      CHECK(*s.pooled_cdt == 0.0);
      REQUIRE(s.pooled_jsd.has_value());
      CHECK(*s.pooled_jsd == 0.0);
    }
  }
}

TEST_CASE("single-window series: pooled statistics match the lone gap") {
  // Twelve steps fit exactly one five-step window, so pooling is the identity.
  const auto series = make_series(sinusoid(12));
  const auto s = hrgap::evaluate_method(series, 5.0, Method::linear, BenchmarkConfig{});
  CHECK(s.n_gaps_scored == 1);
  REQUIRE(s.pooled_cdt.has_value());
  REQUIRE(s.mean_cdt.has_value());
  CHECK(*s.pooled_cdt == *s.mean_cdt);
  REQUIRE(s.pooled_jsd.has_value());
  CHECK(s.pooled_jsd == s.mean_jsd);
}

TEST_CASE("methods without context are skipped, not failed") {
  // Seven steps leave only two observed points: enough for linear, not for
  // the b-spline window.
  const auto series = make_series(sinusoid(7), 0.0, 60.0, "tiny");
  BenchmarkConfig cfg;
  cfg.gap_sizes_minutes = {5.0};
  cfg.methods = {Method::linear, Method::bspline};
  const auto result = hrgap::run_benchmark({series}, cfg);

  REQUIRE(result.tables.size() == 1);
  const auto& table = result.tables[0];
  CHECK(table.summaries[0].n_gaps_scored == 1);
  CHECK(table.summaries[1].n_gaps_scored == 0);
  CHECK(table.summaries[1].n_gaps_skipped == 1);
  CHECK(std::isfinite(table.cells(0, 0)));
  CHECK(std::isnan(table.cells(0, 1)));
  CHECK(table.best_column(0) == 0);

  const auto ranking = hrgap::rank_methods(result.tables);
  for (const auto& entry : ranking) CHECK(entry.method == Method::linear);
}

TEST_CASE("gap sizes are sorted and deduplicated; labels sorted") {
  const auto a = make_series(sinusoid(60), 0.0, 60.0, "b");
  const auto b = make_series(sinusoid(60), 0.0, 60.0, "a");
  BenchmarkConfig cfg;
  cfg.gap_sizes_minutes = {15.0, 5.0, 5.0};
  const auto result = hrgap::run_benchmark({a, b}, cfg);
  REQUIRE(result.tables.size() == 4);  // 2 labels x 2 distinct gaps
  CHECK(result.tables[0].dataset_label == "a");
  CHECK(result.tables[0].gap_minutes == 5.0);
  CHECK(result.tables[1].gap_minutes == 15.0);
  CHECK(result.tables[2].dataset_label == "b");
}

TEST_CASE("per-series planning failures are recorded, not fatal") {
  const auto good = make_series(sinusoid(60), 0.0, 60.0, "ok");
  const auto tiny = make_series(sinusoid(6), 0.0, 60.0, "stub");
  BenchmarkConfig cfg;
  cfg.gap_sizes_minutes = {5.0};
  cfg.methods = {Method::linear};

  const auto result = hrgap::run_benchmark({good, tiny}, cfg);
  REQUIRE(result.series_notes.size() == 1);
  CHECK(result.series_notes[0].find("stub") != std::string::npos);
  REQUIRE(result.tables.size() == 2);  // both labels still get a table

  CHECK_THROWS_AS(hrgap::run_benchmark({tiny}, cfg), hrgap::SeriesTooShortError);
  CHECK_THROWS_AS(hrgap::run_benchmark({}, cfg), hrgap::ConfigError);
  CHECK_THROWS_AS(hrgap::evaluate_method(tiny, 5.0, Method::linear, cfg),
                  hrgap::SeriesTooShortError);
}

TEST_CASE("benchmark runs are deterministic") {
  const auto series = make_series(sinusoid(100), 0.0, 60.0, "watch");
  BenchmarkConfig cfg;
  const auto r1 = hrgap::run_benchmark({series}, cfg);
  const auto r2 = hrgap::run_benchmark({series}, cfg);
  REQUIRE(r1.tables.size() == r2.tables.size());
  for (std::size_t t = 0; t < r1.tables.size(); ++t) {
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 4; ++c) {
        CHECK(same_cell(r1.tables[t].cells(r, c), r2.tables[t].cells(r, c)));
      }
    }
  }
  CHECK(r1.gap_records.size() == r2.gap_records.size());
}

TEST_CASE("best_column and rank_methods on hand-built tables") {
  hrgap::ReportTable table;
  table.dataset_label = "d";
  table.gap_minutes = 5.0;
  table.methods = {Method::linear, Method::pchip, Method::bspline, Method::knn};
  table.cells = Eigen::MatrixXd::Constant(5, 4, kNaN);
  table.cells.row(0) << 1.0, 1.0, 3.0, kNaN;
  table.cells.row(2) << 2.0, kNaN, 1.5, 7.0;

  CHECK(table.best_column(0) == 0);
  CHECK(table.best_column(2) == 2);
  CHECK(table.best_column(1) == -1);

  const auto ranking = hrgap::rank_methods({table});
  REQUIRE(ranking.size() == 6);  // 3 on the RMSE row, 3 on the MAPE row
  // Ties share the smaller rank; the tied pair keeps column order.
  CHECK(ranking[0].method == Method::linear);
  CHECK(ranking[0].rank == 1);
  CHECK(ranking[1].method == Method::pchip);
  CHECK(ranking[1].rank == 1);
  CHECK(ranking[2].method == Method::bspline);
  CHECK(ranking[2].rank == 3);
  CHECK(ranking[3].metric == "MAPE");
  CHECK(ranking[3].method == Method::bspline);
  CHECK(ranking[3].rank == 1);

  CHECK_THROWS_AS(hrgap::rank_methods({}), hrgap::Error);
}
