#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hrgap/gap_protocol.hpp"
#include "hrgap/series.hpp"

namespace hrgap {

enum class Method { linear, pchip, bspline, knn };

inline constexpr std::array<Method, 4> kAllMethods{Method::linear, Method::pchip, Method::bspline,
                                                   Method::knn};

/// Exact lowercase method names: "linear", "pchip", "bspline", "knn".
std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ImputerConfig {
  Method method = Method::linear;
  int knn_k = 5;             ///< neighbor count
  double knn_epsilon = 1e-9; ///< seconds; distance guard for coincident times
};

/// Straight line between the observed points bracketing each target.
/// Needs >= 2 points; targets must lie inside the observed hull
/// (OutOfRangeError otherwise).
ArrayXd impute_linear(const ObservedPoints& points, const ArrayXd& targets);

/// Fritsch-Carlson shape-preserving cubic through all observed points.
/// Needs >= 2 points; targets inside the hull.
ArrayXd impute_pchip(const ObservedPoints& points, const ArrayXd& targets);

/// Per gap, a local cubic interpolating spline (not-a-knot, B-spline form,
/// de Boor evaluation) through up to 6 observed points on each side of the
/// gap. Needs >= 4 points in the local window; targets inside the hull.
ArrayXd impute_bspline(const ObservedPoints& points, const ArrayXd& targets);

/// Inverse-distance weighted mean of the min(k, available) observed points
/// nearest in time, ties broken toward the earlier sample; weights
/// 1/max(|x_j - t|, epsilon). Needs >= 1 point.
ArrayXd impute_knn(const ObservedPoints& points, const ArrayXd& targets, int k, double epsilon);

/// Dispatches on cfg.method. Throws InsufficientContextError when the
/// observed view cannot support the method.
ArrayXd impute_targets(const ObservedPoints& points, const ArrayXd& targets,
                       const ImputerConfig& cfg);

/// One finite value per masked index of `masked`, ascending index order.
/// Reads only the observed view, never ground truth at masked indices.
ArrayXd impute(const MaskedSeries& masked, const ImputerConfig& cfg);

}  // namespace hrgap
