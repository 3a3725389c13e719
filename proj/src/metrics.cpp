#include "hrgap/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace hrgap {

namespace {

constexpr double kDegenerateSd = 1e-12;

double sample_sd(const ArrayXd& v) {
  const double mean = v.mean();
  return std::sqrt((v - mean).square().sum() / static_cast<double>(v.size() - 1));
}

// Base-2 KL divergence with 0*log(0/x) taken as 0. b is a mixture that is
// positive wherever a is.
double kl_base2(const ArrayXd& a, const ArrayXd& b) {
  double sum = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] > 0.0) sum += a[i] * std::log2(a[i] / b[i]);
  }
  return sum;
}

void validate_segment(const PairedSegment& seg) {
  detail::check_paired(seg.real.size(), seg.imputed.size());
  if (!seg.real.isFinite().all() || !seg.imputed.isFinite().all()) {
    throw Error("paired segment: non-finite value");
  }
  if ((seg.real <= 0.0).any()) throw Error("paired segment: real values must be positive");
}

}  // namespace

std::optional<double> cohens_distance(const PairedSegment& seg) {
  detail::check_paired(seg.real.size(), seg.imputed.size());
  if (seg.size() < 2) {
    throw SegmentTooShortError("cohens distance needs at least 2 samples per side");
  }
  const double mean_diff = std::abs(seg.real.mean() - seg.imputed.mean());
  const double sd_r = sample_sd(seg.real);
  const double sd_i = sample_sd(seg.imputed);
  const double sd_pooled = std::sqrt((sd_r * sd_r + sd_i * sd_i) / 2.0);
  if (sd_pooled < kDegenerateSd) {
    if (mean_diff < kDegenerateSd) return 0.0;
    return std::nullopt;  // zero variance with differing means
  }
  return mean_diff / sd_pooled;
}

HistogramPair build_histogram_pair(const PairedSegment& seg, int n_bins) {
  detail::check_paired(seg.real.size(), seg.imputed.size());
  if (n_bins < 1) throw ConfigError("histogram needs at least 1 bin");

  const double lo = std::min(seg.real.minCoeff(), seg.imputed.minCoeff());
  const double hi = std::max(seg.real.maxCoeff(), seg.imputed.maxCoeff());

  HistogramPair hist;
  if (hi <= lo) {
    // All values coincide: one degenerate bin carries both distributions.
    hist.edges = ArrayXd::Constant(2, lo);
    hist.p = ArrayXd::Constant(1, 1.0);
    hist.q = ArrayXd::Constant(1, 1.0);
    return hist;
  }

  hist.edges.resize(n_bins + 1);
  const double width = (hi - lo) / n_bins;
  for (int i = 0; i <= n_bins; ++i) hist.edges[i] = lo + width * i;
  hist.edges[n_bins] = hi;

  auto bin_of = [&](double v) {
    const auto idx = static_cast<Index>(std::floor((v - lo) / width));
    return std::clamp<Index>(idx, 0, n_bins - 1);  // top edge inclusive
  };
  hist.p = ArrayXd::Zero(n_bins);
  hist.q = ArrayXd::Zero(n_bins);
  for (Index i = 0; i < seg.real.size(); ++i) hist.p[bin_of(seg.real[i])] += 1.0;
  for (Index i = 0; i < seg.imputed.size(); ++i) hist.q[bin_of(seg.imputed[i])] += 1.0;
  hist.p /= static_cast<double>(seg.real.size());
  hist.q /= static_cast<double>(seg.imputed.size());
  return hist;
}

double js_distance(const HistogramPair& hist) {
  const ArrayXd mixture = (hist.p + hist.q) / 2.0;
  const double divergence = kl_base2(hist.p, mixture) / 2.0 + kl_base2(hist.q, mixture) / 2.0;
  return std::clamp(std::sqrt(std::max(divergence, 0.0)), 0.0, 1.0);
}

GapScore score_gap(const PairedSegment& seg, int n_bins) {
  validate_segment(seg);
  GapScore score;
  score.rmse = rmse(seg);
  score.mae = mae(seg);
  score.mape = mape(seg);
  score.cdt = seg.size() >= 2 ? cohens_distance(seg) : std::nullopt;
  score.jsd = js_distance(build_histogram_pair(seg, n_bins));
  return score;
}

}  // namespace hrgap
