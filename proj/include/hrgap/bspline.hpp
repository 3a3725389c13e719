#pragma once

#include <Eigen/Core>

#include "hrgap/series.hpp"

namespace hrgap {

/// A cubic piecewise polynomial in its B-spline basis representation.
///
/// The basis over a non-decreasing knot vector satisfies the usual
/// conditions: each B_{i,k} is supported on [t_i, t_{i+k+1}], is a degree-k
/// polynomial on every knot interval, and at any x at most k+1 basis
/// functions are nonzero and they sum to one on the interior.
class BsplineCurve {
 public:
  static constexpr int kDegree = 3;

  /// Interpolating spline through the points with not-a-knot end
  /// conditions: full end-knot multiplicity, interior knots at the observed
  /// times with the first and last interior ones removed, coefficients from
  /// the collocation system. Reproduces polynomials of degree <= 3.
  /// Requires at least 4 points (InsufficientContextError otherwise).
  static BsplineCurve interpolate_not_a_knot(const ObservedPoints& points);

  /// Evaluates via the de Boor recurrence.
  /// Throws OutOfRangeError outside [knots.front(), knots.back()].
  double operator()(double x) const;
  ArrayXd eval(const ArrayXd& xs) const;

  const ArrayXd& knots() const { return knots_; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  int degree() const { return kDegree; }

  /// Index i of the knot span with t_i <= x < t_{i+1}, clamped so that the
  /// span is non-empty; x equal to the last knot lands in the final span.
  static Index find_span(const ArrayXd& knots, int degree, double x);

  /// The degree+1 basis values B_{span-degree,k}(x) ... B_{span,k}(x),
  /// computed with the Cox - de Boor recurrence. All other basis functions
  /// vanish at x.
  static Eigen::VectorXd basis_values(const ArrayXd& knots, int degree, Index span, double x);

 private:
  BsplineCurve(ArrayXd knots, Eigen::VectorXd coeffs);

  ArrayXd knots_;
  Eigen::VectorXd coeffs_;
};

}  // namespace hrgap
