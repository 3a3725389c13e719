#include "hrgap/gap_protocol.hpp"

#include <cmath>
#include <string>

#include "hrgap/errors.hpp"

namespace hrgap {

namespace {

// Converts a duration in minutes to whole grid steps; the duration must be
// a positive whole multiple of dt.
Index minutes_to_steps(double minutes, double dt, const char* what) {
  const double seconds = minutes * 60.0;
  if (!(seconds > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  const double steps = seconds / dt;
  const double rounded = std::round(steps);
  if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9) {
    throw ConfigError(std::string(what) + " is not a whole multiple of the grid step");
  }
  return static_cast<Index>(rounded);
}

}  // namespace

GapPlan plan_gaps(const HeartRateSeries& series, double gap_minutes, double spacing_minutes) {
  const Index gap_len = minutes_to_steps(gap_minutes, series.dt, "gap size");
  const Index spacing = minutes_to_steps(spacing_minutes, series.dt, "gap spacing");

  const Index n = series.size();
  GapPlan plan;
  plan.gap_len = gap_len;
  plan.spacing = spacing;

  // One observed slot must remain on each side of every window; the first
  // candidate starts after a retained prefix of `spacing` steps.
  if (spacing + gap_len > n - 1) {
    throw SeriesTooShortError("series of " + std::to_string(n) +
                              " steps cannot hold a gap of " + std::to_string(gap_len) +
                              " steps with spacing " + std::to_string(spacing));
  }

  for (Index start = spacing; start + gap_len <= n - 1; start += gap_len + spacing) {
    bool covers_missing = false;
    for (Index i = start; i < start + gap_len; ++i) {
      if (!series.present(i)) {
        covers_missing = true;
        break;
      }
    }
    if (covers_missing) {
      ++plan.skipped_windows;
      continue;
    }
    plan.windows.push_back({start, gap_len});
  }
  return plan;
}

MaskedSeries apply_mask(const HeartRateSeries& series, const GapPlan& plan) {
  const Index n = series.size();
  MaskedSeries masked;
  masked.truth = series;
  masked.mask = ArrayXb::Constant(n, false);
  masked.plan = plan;
  for (const auto& w : plan.windows) {
    if (w.start_index < 0 || w.length < 1 || w.start_index + w.length > n) {
      throw PlanMismatchError("gap window [" + std::to_string(w.start_index) + ", +" +
                              std::to_string(w.length) + ") exceeds series of " +
                              std::to_string(n) + " steps");
    }
    for (Index i = w.start_index; i < w.start_index + w.length; ++i) masked.mask[i] = true;
  }
  return masked;
}

ObservedPoints MaskedSeries::observed() const {
  const Index n = truth.size();
  Index count = 0;
  for (Index i = 0; i < n; ++i) {
    if (truth.present(i) && !mask[i]) ++count;
  }
  ObservedPoints pts;
  pts.xs.resize(count);
  pts.ys.resize(count);
  Index j = 0;
  for (Index i = 0; i < n; ++i) {
    if (truth.present(i) && !mask[i]) {
      pts.xs[j] = truth.time_at(i);
      pts.ys[j] = truth.values[i];
      ++j;
    }
  }
  return pts;
}

std::vector<Index> MaskedSeries::masked_indices() const {
  std::vector<Index> idx;
  for (Index i = 0; i < truth.size(); ++i) {
    if (mask[i]) idx.push_back(i);
  }
  return idx;
}

ArrayXd MaskedSeries::masked_times() const {
  const auto idx = masked_indices();
  ArrayXd times(static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    times[static_cast<Index>(j)] = truth.time_at(idx[j]);
  }
  return times;
}

}  // namespace hrgap
