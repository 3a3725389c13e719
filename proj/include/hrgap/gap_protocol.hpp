#pragma once

#include <cstddef>
#include <vector>

#include "hrgap/series.hpp"

namespace hrgap {

/// A contiguous run of artificially removed grid slots.
struct GapWindow {
  Index start_index = 0;
  Index length = 0;

  bool operator==(const GapWindow&) const = default;
};

/// A deterministic set of artificial gaps: fixed-length windows tiled from
/// index `spacing` with `spacing` retained steps between candidates.
/// Candidates overlapping pre-existing missing data are skipped; tiling
/// stays on the same alignment. Every planned index holds a present value,
/// at least one grid slot precedes the first window and one follows the
/// last.
struct GapPlan {
  Index gap_len = 0;  ///< window length, grid steps
  Index spacing = 1;  ///< retained steps between consecutive windows
  std::vector<GapWindow> windows;
  std::size_t skipped_windows = 0;  ///< candidates dropped over pre-existing missing data

  Index masked_count() const {
    Index n = 0;
    for (const auto& w : windows) n += w.length;
    return n;
  }
};

/// Plans gaps of gap_minutes separated by spacing_minutes of retained data.
/// Both durations must be positive whole multiples of the grid step.
/// Pure: identical inputs give identical plans.
/// Throws SeriesTooShortError when not even the first candidate fits,
/// ConfigError on durations that do not align with the grid.
GapPlan plan_gaps(const HeartRateSeries& series, double gap_minutes, double spacing_minutes);

/// Ground truth plus the boolean missing-mask for one plan. All windows are
/// masked simultaneously; truth is kept only for scoring.
struct MaskedSeries {
  HeartRateSeries truth;
  ArrayXb mask;  ///< true = artificially missing
  GapPlan plan;

  /// Present, unmasked samples: the view exposed to imputers.
  ObservedPoints observed() const;

  /// Grid indices covered by the plan's windows, ascending.
  std::vector<Index> masked_indices() const;

  /// Grid times of masked_indices(), same order.
  ArrayXd masked_times() const;
};

/// Throws PlanMismatchError if the plan's windows exceed the series bounds.
MaskedSeries apply_mask(const HeartRateSeries& series, const GapPlan& plan);

}  // namespace hrgap
