#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>

namespace hrgap {

using Eigen::ArrayXd;
using Eigen::Index;
using ArrayXb = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// A heart-rate series on a uniform time grid. Slot i covers
/// [t0 + i*dt, t0 + (i+1)*dt); NaN marks a slot with no observation.
/// Every present value is finite and > 0 bpm.
struct HeartRateSeries {
  double t0 = 0.0;           ///< grid origin, Unix seconds (multiple of dt)
  double dt = 60.0;          ///< seconds per grid step
  ArrayXd values;            ///< bpm; NaN = missing
  std::string source_label;  ///< dataset/subject identifier

  Index size() const { return values.size(); }

  double time_at(Index i) const { return t0 + static_cast<double>(i) * dt; }

  bool present(Index i) const { return !std::isnan(values[i]); }

  Index present_count() const {
    Index n = 0;
    for (Index i = 0; i < values.size(); ++i) n += present(i) ? 1 : 0;
    return n;
  }
};

/// Strictly increasing sample times paired with their values; the only view
/// of a series an imputer ever sees.
struct ObservedPoints {
  ArrayXd xs;  ///< Unix seconds, strictly increasing
  ArrayXd ys;  ///< bpm, finite and > 0

  Index size() const { return xs.size(); }
};

}  // namespace hrgap
