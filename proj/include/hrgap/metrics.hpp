#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>

#include "hrgap/errors.hpp"
#include "hrgap/series.hpp"

namespace hrgap {

/// Ground-truth values paired with the values imputed at the same indices.
struct PairedSegment {
  ArrayXd real;     ///< bpm, finite and > 0
  ArrayXd imputed;  ///< bpm, finite

  Index size() const { return real.size(); }
};

namespace detail {
inline void check_paired(Index n_real, Index n_imputed) {
  if (n_real != n_imputed) throw Error("paired segment: length mismatch");
  if (n_real == 0) throw Error("paired segment: empty");
}
}  // namespace detail

/// sqrt(mean((real - imputed)^2)), bpm.
template <typename A, typename B>
double rmse(const Eigen::ArrayBase<A>& real, const Eigen::ArrayBase<B>& imputed) {
  detail::check_paired(real.size(), imputed.size());
  return std::sqrt((real.derived() - imputed.derived()).square().mean());
}

/// mean(|real - imputed|), bpm.
template <typename A, typename B>
double mae(const Eigen::ArrayBase<A>& real, const Eigen::ArrayBase<B>& imputed) {
  detail::check_paired(real.size(), imputed.size());
  return (real.derived() - imputed.derived()).abs().mean();
}

/// 100 * mean(|real - imputed| / real), percent.
/// Throws ZeroDenominatorError when any real value is exactly zero.
template <typename A, typename B>
double mape(const Eigen::ArrayBase<A>& real, const Eigen::ArrayBase<B>& imputed) {
  detail::check_paired(real.size(), imputed.size());
  if ((real.derived() == 0.0).any()) throw ZeroDenominatorError("mape: real value is zero");
  return 100.0 * ((real.derived() - imputed.derived()).abs() / real.derived()).mean();
}

inline double rmse(const PairedSegment& seg) { return rmse(seg.real, seg.imputed); }
inline double mae(const PairedSegment& seg) { return mae(seg.real, seg.imputed); }
inline double mape(const PairedSegment& seg) { return mape(seg.real, seg.imputed); }

/// |mean(real) - mean(imputed)| / sqrt((sd_real^2 + sd_imputed^2) / 2) with
/// sample (n-1) standard deviations. Empty optional flags the degenerate
/// zero-variance case with differing means. Throws SegmentTooShortError for
/// segments shorter than 2.
std::optional<double> cohens_distance(const PairedSegment& seg);

/// Probability masses of real and imputed values binned on one shared
/// equal-width grid; the top edge is inclusive. A zero-width value range
/// collapses to a single degenerate bin holding all mass of both sides.
struct HistogramPair {
  ArrayXd edges;  ///< n_bins + 1 entries, strictly increasing (2 equal ones when degenerate)
  ArrayXd p;      ///< mass per bin from real values, sums to 1
  ArrayXd q;      ///< mass per bin from imputed values, sums to 1
};

HistogramPair build_histogram_pair(const PairedSegment& seg, int n_bins);

/// sqrt(KL(p,r)/2 + KL(q,r)/2) with r = (p+q)/2, KL in log base 2 and
/// 0*log(0/x) taken as 0; clamped to [0,1]. 0 = identical distributions,
/// 1 = maximally different.
double js_distance(const HistogramPair& hist);

/// The five per-gap metrics. cdt is absent for length-1 segments and for
/// degenerate zero-variance segments with differing means.
struct GapScore {
  double rmse = 0.0;
  double mae = 0.0;
  double mape = 0.0;
  std::optional<double> cdt;
  double jsd = 0.0;
};

/// Bundles all five metrics; validates the segment invariants first.
GapScore score_gap(const PairedSegment& seg, int n_bins);

}  // namespace hrgap
