#pragma once

#include <vector>

#include "hrgap/series.hpp"

namespace hrgap {

/// Shape-preserving piecewise cubic Hermite interpolant.
///
/// Knot slopes follow the Fritsch-Carlson construction: a weighted harmonic
/// mean of the adjacent secant slopes at interior knots, zero whenever the
/// secants differ in sign or either is zero, and a sign-clamped one-sided
/// three-point estimate at the boundary knots. The resulting curve never
/// overshoots the values of the knots bracketing each interval.
class PchipCurve {
 public:
  /// Cubic on [x_i, x_{i+1}] in the local coordinate s = x - x_i:
  /// value = ((c3*s + c2)*s + c1)*s + c0, so c0 = y_i and c1 = m_i.
  struct Segment {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double eval(double s) const { return ((c3 * s + c2) * s + c1) * s + c0; }
  };

  /// Requires at least 2 points (InsufficientContextError otherwise).
  explicit PchipCurve(const ObservedPoints& points);

  /// Throws OutOfRangeError outside the knot hull.
  double operator()(double x) const;
  ArrayXd eval(const ArrayXd& xs) const;

  const ArrayXd& slopes() const { return slopes_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double x_front() const { return xs_[0]; }
  double x_back() const { return xs_[xs_.size() - 1]; }

 private:
  ArrayXd xs_;
  ArrayXd ys_;
  ArrayXd slopes_;
  std::vector<Segment> segments_;
};

}  // namespace hrgap
