#include "hrgap/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hrgap/errors.hpp"
#include "hrgap/gap_protocol.hpp"

namespace hrgap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct WindowScore {
  GapWindow window;
  GapScore score;
};

// Per-gap scores of one (series, gap size, method) run plus the raw pairs
// for the pooled-concatenation variants.
struct SeriesScores {
  std::vector<WindowScore> scored;
  std::size_t skipped = 0;
  std::vector<double> pooled_real;
  std::vector<double> pooled_imputed;
};

SeriesScores score_series(const MaskedSeries& masked, const ObservedPoints& observed,
                          Method method, const BenchmarkConfig& cfg) {
  SeriesScores out;
  const ImputerConfig imputer_cfg = cfg.imputer_config(method);
  for (const auto& w : masked.plan.windows) {
    ArrayXd targets(w.length);
    for (Index i = 0; i < w.length; ++i) targets[i] = masked.truth.time_at(w.start_index + i);
    ArrayXd imputed;
    try {
      imputed = impute_targets(observed, targets, imputer_cfg);
    } catch (const InsufficientContextError&) {
      ++out.skipped;
      continue;
    } catch (const OutOfRangeError&) {
      ++out.skipped;  // no observed bracket on one side of this window
      continue;
    }
    PairedSegment seg{masked.truth.values.segment(w.start_index, w.length), imputed};
    out.scored.push_back({w, score_gap(seg, cfg.n_bins)});
    for (Index i = 0; i < w.length; ++i) {
      out.pooled_real.push_back(seg.real[i]);
      out.pooled_imputed.push_back(seg.imputed[i]);
    }
  }
  return out;
}

MethodSummary summarize(Method method, double gap_minutes, const std::vector<GapScore>& scores,
                        std::size_t skipped, const PairedSegment& pooled, int n_bins) {
  MethodSummary s;
  s.method = method;
  s.gap_minutes = gap_minutes;
  s.n_gaps_scored = scores.size();
  s.n_gaps_skipped = skipped;
  if (scores.empty()) return s;

  double sum_rmse = 0.0, sum_mae = 0.0, sum_mape = 0.0, sum_jsd = 0.0, sum_cdt = 0.0;
  std::size_t n_cdt = 0;
  for (const auto& sc : scores) {
    sum_rmse += sc.rmse;
    sum_mae += sc.mae;
    sum_mape += sc.mape;
    sum_jsd += sc.jsd;
    if (sc.cdt) {
      sum_cdt += *sc.cdt;
      ++n_cdt;
    }
  }
  const auto n = static_cast<double>(scores.size());
  s.mean_rmse = sum_rmse / n;
  s.mean_mae = sum_mae / n;
  s.mean_mape = sum_mape / n;
  s.mean_jsd = sum_jsd / n;
  s.n_cdt_absent = scores.size() - n_cdt;
  if (n_cdt > 0) s.mean_cdt = sum_cdt / static_cast<double>(n_cdt);

  if (pooled.size() >= 2) s.pooled_cdt = cohens_distance(pooled);
  if (pooled.size() >= 1) s.pooled_jsd = js_distance(build_histogram_pair(pooled, n_bins));
  return s;
}

ArrayXd to_array(const std::vector<double>& v) {
  return Eigen::Map<const ArrayXd>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

void BenchmarkConfig::validate() const {
  if (gap_sizes_minutes.empty()) throw ConfigError("no gap sizes configured");
  if (methods.empty()) throw ConfigError("no methods configured");
  for (double g : gap_sizes_minutes) {
    if (!(g > 0.0)) throw ConfigError("gap sizes must be positive");
  }
  if (!(spacing_minutes > 0.0)) throw ConfigError("gap spacing must be positive");
  if (n_bins < 1) throw ConfigError("bin count must be at least 1");
  if (!(dt_seconds > 0.0)) throw ConfigError("grid step must be positive");
  if (knn_k < 1) throw ConfigError("knn neighbor count must be at least 1");
  if (!(knn_epsilon > 0.0)) throw ConfigError("knn epsilon must be positive");
}

MethodSummary evaluate_method(const HeartRateSeries& series, double gap_minutes, Method method,
                              const BenchmarkConfig& cfg) {
  const GapPlan plan = plan_gaps(series, gap_minutes, cfg.spacing_minutes);
  const MaskedSeries masked = apply_mask(series, plan);
  const ObservedPoints observed = masked.observed();
  const SeriesScores run = score_series(masked, observed, method, cfg);

  std::vector<GapScore> scores;
  scores.reserve(run.scored.size());
  for (const auto& ws : run.scored) scores.push_back(ws.score);
  const PairedSegment pooled{to_array(run.pooled_real), to_array(run.pooled_imputed)};
  return summarize(method, gap_minutes, scores, run.skipped, pooled, cfg.n_bins);
}

int ReportTable::best_column(int row) const {
  int best = -1;
  double best_value = kNaN;
  for (int c = 0; c < cells.cols(); ++c) {
    const double v = cells(row, c);
    if (std::isnan(v)) continue;
    if (best < 0 || v < best_value) {
      best = c;
      best_value = v;
    }
  }
  return best;
}

BenchmarkResult run_benchmark(const std::vector<HeartRateSeries>& inputs,
                              const BenchmarkConfig& cfg) {
  cfg.validate();
  if (inputs.empty()) throw ConfigError("no input series");

  std::vector<double> gaps = cfg.gap_sizes_minutes;
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

  std::set<std::string> labels;
  for (const auto& s : inputs) labels.insert(s.source_label);

  BenchmarkResult result;

  // Plans and observed views depend only on (series, gap size); build them
  // once and share across methods. Failures are recorded and the series
  // skipped.
  struct MaskedEntry {
    MaskedSeries masked;
    ObservedPoints observed;
  };
  std::map<std::pair<std::size_t, double>, MaskedEntry> masked_by_key;
  bool any_planned = false;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (double gap : gaps) {
      try {
        const GapPlan plan = plan_gaps(inputs[i], gap, cfg.spacing_minutes);
        MaskedSeries masked = apply_mask(inputs[i], plan);
        ObservedPoints observed = masked.observed();
        masked_by_key.emplace(std::make_pair(i, gap),
                              MaskedEntry{std::move(masked), std::move(observed)});
        any_planned = true;
      } catch (const SeriesTooShortError& e) {
        result.series_notes.push_back(inputs[i].source_label + "[" + std::to_string(i) +
                                      "]: " + e.what());
      }
    }
  }
  if (!any_planned) {
    throw SeriesTooShortError("every input series failed gap planning");
  }

  for (const std::string& label : labels) {
    for (double gap : gaps) {
      ReportTable table;
      table.dataset_label = label;
      table.gap_minutes = gap;
      table.methods = cfg.methods;
      table.cells = Eigen::MatrixXd::Constant(5, static_cast<Index>(cfg.methods.size()), kNaN);

      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const Method method = cfg.methods[mi];
        std::vector<GapScore> scores;
        std::size_t skipped = 0;
        std::vector<double> pooled_real, pooled_imputed;

        for (std::size_t i = 0; i < inputs.size(); ++i) {
          if (inputs[i].source_label != label) continue;
          const auto it = masked_by_key.find({i, gap});
          if (it == masked_by_key.end()) continue;
          const SeriesScores run = score_series(it->second.masked, it->second.observed, method, cfg);
          skipped += run.skipped;
          for (const auto& ws : run.scored) {
            scores.push_back(ws.score);
            result.gap_records.push_back(
                {label, gap, method, i, ws.window.start_index, ws.window.length, ws.score});
          }
          pooled_real.insert(pooled_real.end(), run.pooled_real.begin(), run.pooled_real.end());
          pooled_imputed.insert(pooled_imputed.end(), run.pooled_imputed.begin(),
                                run.pooled_imputed.end());
        }

        const PairedSegment pooled{to_array(pooled_real), to_array(pooled_imputed)};
        MethodSummary summary = summarize(method, gap, scores, skipped, pooled, cfg.n_bins);
        if (summary.n_gaps_scored > 0) {
          const auto col = static_cast<Index>(mi);
          table.cells(0, col) = summary.mean_rmse;
          table.cells(1, col) = summary.mean_mae;
          table.cells(2, col) = summary.mean_mape;
          table.cells(3, col) = summary.mean_cdt ? *summary.mean_cdt : kNaN;
          table.cells(4, col) = summary.mean_jsd;
        }
        table.summaries.push_back(std::move(summary));
      }
      result.tables.push_back(std::move(table));
    }
  }
  return result;
}

std::vector<RankEntry> rank_methods(const std::vector<ReportTable>& tables) {
  if (tables.empty()) throw Error("rank_methods: no tables");
  std::vector<RankEntry> ranking;
  for (const auto& table : tables) {
    for (int row = 0; row < 5; ++row) {
      struct Cell {
        Method method;
        double mean;
        std::size_t column;
      };
      std::vector<Cell> cells;
      for (std::size_t c = 0; c < table.methods.size(); ++c) {
        const double v = table.cells(row, static_cast<Index>(c));
        if (!std::isnan(v)) cells.push_back({table.methods[c], v, c});
      }
      std::stable_sort(cells.begin(), cells.end(),
                       [](const Cell& a, const Cell& b) { return a.mean < b.mean; });
      for (std::size_t i = 0; i < cells.size(); ++i) {
        int rank = 1;
        for (const auto& other : cells) {
          if (other.mean < cells[i].mean) ++rank;
        }
        ranking.push_back({table.dataset_label, table.gap_minutes,
                           ReportTable::kMetricNames[static_cast<std::size_t>(row)],
                           cells[i].method, cells[i].mean, rank});
      }
    }
  }
  return ranking;
}

}  // namespace hrgap
