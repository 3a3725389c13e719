#include "hrgap/imputers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hrgap/bspline.hpp"
#include "hrgap/errors.hpp"
#include "hrgap/pchip.hpp"

namespace hrgap {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::linear:
      return "linear";
    case Method::pchip:
      return "pchip";
    case Method::bspline:
      return "bspline";
    case Method::knn:
      return "knn";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

// Index of the rightmost observed point with xs[i] <= x, for x inside the
// hull; x equal to the last point maps to the final interval.
Index bracket_left(const ArrayXd& xs, double x) {
  const Index n = xs.size();
  if (x < xs[0] || x > xs[n - 1]) {
    throw OutOfRangeError("interpolation target outside the observed hull");
  }
  const double* begin = xs.data();
  const double* it = std::upper_bound(begin, begin + n, x);
  return std::clamp<Index>(static_cast<Index>(it - begin) - 1, 0, n - 2);
}

}  // namespace

ArrayXd impute_linear(const ObservedPoints& points, const ArrayXd& targets) {
  if (points.size() < 2) {
    throw InsufficientContextError("linear interpolation needs at least 2 observed points");
  }
  ArrayXd out(targets.size());
  for (Index t = 0; t < targets.size(); ++t) {
    const Index l = bracket_left(points.xs, targets[t]);
    const double x_l = points.xs[l];
    const double x_r = points.xs[l + 1];
    const double y_l = points.ys[l];
    const double y_r = points.ys[l + 1];
    out[t] = y_l + (targets[t] - x_l) * (y_r - y_l) / (x_r - x_l);
  }
  return out;
}

ArrayXd impute_pchip(const ObservedPoints& points, const ArrayXd& targets) {
  return PchipCurve(points).eval(targets);
}

ArrayXd impute_bspline(const ObservedPoints& points, const ArrayXd& targets) {
  constexpr Index kWindowPerSide = 6;
  const Index n = points.size();
  if (n < 4) {
    throw InsufficientContextError("b-spline imputation needs at least 4 observed points");
  }
  ArrayXd out(targets.size());

  // Targets sharing a bracketing pair of observed points belong to the same
  // gap and share one local spline.
  Index t = 0;
  while (t < targets.size()) {
    const Index left = bracket_left(points.xs, targets[t]);
    Index t_end = t + 1;
    while (t_end < targets.size() && bracket_left(points.xs, targets[t_end]) == left) ++t_end;

    const Index lo = std::max<Index>(0, left - (kWindowPerSide - 1));
    const Index hi = std::min<Index>(n - 1, left + kWindowPerSide);  // inclusive
    const Index w = hi - lo + 1;
    if (w < 4) {
      throw InsufficientContextError("b-spline window needs at least 4 observed points");
    }
    ObservedPoints window{points.xs.segment(lo, w), points.ys.segment(lo, w)};
    const BsplineCurve spline = BsplineCurve::interpolate_not_a_knot(window);
    for (Index i = t; i < t_end; ++i) out[i] = spline(targets[i]);
    t = t_end;
  }
  return out;
}

ArrayXd impute_knn(const ObservedPoints& points, const ArrayXd& targets, int k, double epsilon) {
  if (points.size() < 1) {
    throw InsufficientContextError("knn imputation needs at least 1 observed point");
  }
  if (k < 1) throw ConfigError("knn neighbor count must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("knn epsilon must be positive");

  const Index n = points.size();
  const Index take = std::min<Index>(k, n);

  struct Neighbor {
    double dist;
    double x;
    double y;
  };
  std::vector<Neighbor> neighbors(static_cast<std::size_t>(n));

  ArrayXd out(targets.size());
  for (Index t = 0; t < targets.size(); ++t) {
    for (Index i = 0; i < n; ++i) {
      neighbors[static_cast<std::size_t>(i)] = {std::abs(points.xs[i] - targets[t]), points.xs[i],
                                                points.ys[i]};
    }
    // Nearest first; equal distances prefer the earlier sample.
    std::partial_sort(neighbors.begin(), neighbors.begin() + take, neighbors.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                        if (a.dist != b.dist) return a.dist < b.dist;
                        return a.x < b.x;
                      });
    double weight_sum = 0.0;
    double weighted_value_sum = 0.0;
    for (Index i = 0; i < take; ++i) {
      const Neighbor& nb = neighbors[static_cast<std::size_t>(i)];
      const double w = 1.0 / std::max(nb.dist, epsilon);
      weight_sum += w;
      weighted_value_sum += w * nb.y;
    }
    out[t] = weighted_value_sum / weight_sum;
  }
  return out;
}

ArrayXd impute_targets(const ObservedPoints& points, const ArrayXd& targets,
                       const ImputerConfig& cfg) {
  if (targets.size() == 0) return ArrayXd(0);
  switch (cfg.method) {
    case Method::linear:
      return impute_linear(points, targets);
    case Method::pchip:
      return impute_pchip(points, targets);
    case Method::bspline:
      return impute_bspline(points, targets);
    case Method::knn:
      return impute_knn(points, targets, cfg.knn_k, cfg.knn_epsilon);
  }
  throw ConfigError("unknown imputation method");
}

ArrayXd impute(const MaskedSeries& masked, const ImputerConfig& cfg) {
  return impute_targets(masked.observed(), masked.masked_times(), cfg);
}

}  // namespace hrgap
