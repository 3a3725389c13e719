#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hrgap/imputers.hpp"
#include "hrgap/metrics.hpp"
#include "hrgap/series.hpp"

namespace hrgap {

struct BenchmarkConfig {
  std::vector<double> gap_sizes_minutes{5.0, 15.0};
  double spacing_minutes = 1.0;
  std::vector<Method> methods{Method::linear, Method::pchip, Method::bspline, Method::knn};
  int n_bins = 10;
  double dt_seconds = 60.0;
  int knn_k = 5;
  double knn_epsilon = 1e-9;

  /// Throws ConfigError on empty lists or non-positive numeric fields.
  void validate() const;

  ImputerConfig imputer_config(Method m) const { return {m, knn_k, knn_epsilon}; }
};

/// Per-method average of the per-gap scores, one gap size at a time.
/// Means cover scored gaps only; mean_cdt additionally excludes gaps whose
/// CDT is absent (counted in n_cdt_absent).
struct MethodSummary {
  Method method = Method::linear;
  double gap_minutes = 0.0;
  std::size_t n_gaps_scored = 0;
  std::size_t n_gaps_skipped = 0;  ///< windows the imputer lacked context for
  std::size_t n_cdt_absent = 0;
  double mean_rmse = 0.0;
  double mean_mae = 0.0;
  double mean_mape = 0.0;
  std::optional<double> mean_cdt;
  double mean_jsd = 0.0;
  /// Same two statistical distances computed once over the concatenation of
  /// all scored gaps, kept alongside the per-gap averages for comparison.
  std::optional<double> pooled_cdt;
  std::optional<double> pooled_jsd;
};

/// One scored window, kept for audit output.
struct GapRecord {
  std::string dataset;
  double gap_minutes = 0.0;
  Method method = Method::linear;
  std::size_t series_index = 0;  ///< position in the benchmark input list
  Index window_start = 0;
  Index window_length = 0;
  GapScore score;
};

/// One result table: five metric rows, one column per configured method.
struct ReportTable {
  static constexpr std::array<const char*, 5> kMetricNames{"RMSE", "MAE", "MAPE", "CDT",
                                                           "JS distance"};

  std::string dataset_label;
  double gap_minutes = 0.0;
  std::vector<Method> methods;   ///< column order
  Eigen::MatrixXd cells;         ///< 5 x methods.size(); NaN = no value
  std::vector<MethodSummary> summaries;  ///< one per column

  /// Column of the smallest cell in the row (lower is better for every
  /// metric); -1 when the row has no value.
  int best_column(int row) const;
};

/// Plans gaps on the series, masks all of them at once, imputes per window
/// against the shared observed view, scores each window, and averages.
/// Windows the imputer cannot serve are skipped and counted.
/// Throws SeriesTooShortError when no window fits the series.
MethodSummary evaluate_method(const HeartRateSeries& series, double gap_minutes, Method method,
                              const BenchmarkConfig& cfg);

struct BenchmarkResult {
  std::vector<ReportTable> tables;       ///< datasets by label, gaps ascending
  std::vector<GapRecord> gap_records;    ///< every scored gap, deterministic order
  std::vector<std::string> series_notes; ///< per-series failures that were skipped
};

/// Runs every (dataset, gap size, method) combination. Series sharing a
/// source_label form one dataset: their per-gap scores are pooled before
/// averaging, so every gap weighs equally. Per-series failures are recorded
/// and skipped; throws only if every series fails.
BenchmarkResult run_benchmark(const std::vector<HeartRateSeries>& inputs,
                              const BenchmarkConfig& cfg);

/// Methods ordered ascending by mean score; ties share the smaller rank.
struct RankEntry {
  std::string dataset;
  double gap_minutes = 0.0;
  std::string metric;
  Method method = Method::linear;
  double mean = 0.0;
  int rank = 0;
};

/// Per (dataset, gap size, metric) ranking of the table columns. Cells
/// without a value are left out.
std::vector<RankEntry> rank_methods(const std::vector<ReportTable>& tables);

}  // namespace hrgap
