#include "hrgap/bspline.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include "hrgap/errors.hpp"

namespace hrgap {

Index BsplineCurve::find_span(const ArrayXd& knots, int degree, double x) {
  const Index n_basis = knots.size() - degree - 1;
  if (x >= knots[n_basis]) return n_basis - 1;
  if (x <= knots[degree]) return degree;
  Index lo = degree;
  Index hi = n_basis;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    if (x < knots[mid]) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

Eigen::VectorXd BsplineCurve::basis_values(const ArrayXd& knots, int degree, Index span, double x) {
  // Cox - de Boor recurrence over the one non-empty span containing x.
  Eigen::VectorXd values = Eigen::VectorXd::Zero(degree + 1);
  Eigen::VectorXd left(degree + 1);
  Eigen::VectorXd right(degree + 1);
  values[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = x - knots[span + 1 - j];
    right[j] = knots[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = values[r] / (right[r + 1] + left[j - r]);
      values[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    values[j] = saved;
  }
  return values;
}

BsplineCurve::BsplineCurve(ArrayXd knots, Eigen::VectorXd coeffs)
    : knots_(std::move(knots)), coeffs_(std::move(coeffs)) {}

BsplineCurve BsplineCurve::interpolate_not_a_knot(const ObservedPoints& points) {
  const Index m = points.size();
  if (m < kDegree + 1) {
    throw InsufficientContextError("b-spline window needs at least 4 observed points");
  }

  // Clamped knot vector; not-a-knot removes the first and last interior
  // knots, so the spline has one free polynomial piece at each end.
  const Index n_interior = m - 4;
  ArrayXd knots(m + kDegree + 1);
  for (int j = 0; j <= kDegree; ++j) {
    knots[j] = points.xs[0];
    knots[knots.size() - 1 - j] = points.xs[m - 1];
  }
  for (Index j = 0; j < n_interior; ++j) knots[kDegree + 1 + j] = points.xs[2 + j];

  // Collocation: the spline interpolates every observed point.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    const Index span = find_span(knots, kDegree, points.xs[i]);
    const Eigen::VectorXd b = basis_values(knots, kDegree, span, points.xs[i]);
    for (int r = 0; r <= kDegree; ++r) A(i, span - kDegree + r) = b[r];
  }
  const Eigen::VectorXd coeffs = A.partialPivLu().solve(points.ys.matrix());
  return BsplineCurve(std::move(knots), coeffs);
}

double BsplineCurve::operator()(double x) const {
  if (x < knots_[0] || x > knots_[knots_.size() - 1]) {
    throw OutOfRangeError("b-spline target outside the knot hull");
  }
  const Index span = find_span(knots_, kDegree, x);

  // de Boor recurrence on the degree+1 active coefficients.
  Eigen::Matrix<double, kDegree + 1, 1> d;
  for (int j = 0; j <= kDegree; ++j) d[j] = coeffs_[span - kDegree + j];
  for (int r = 1; r <= kDegree; ++r) {
    for (int j = kDegree; j >= r; --j) {
      const Index i = span - kDegree + j;
      const double denom = knots_[i + kDegree - r + 1] - knots_[i];
      const double alpha = (x - knots_[i]) / denom;
      d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
    }
  }
  return d[kDegree];
}

ArrayXd BsplineCurve::eval(const ArrayXd& xs) const {
  ArrayXd out(xs.size());
  for (Index i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

}  // namespace hrgap
