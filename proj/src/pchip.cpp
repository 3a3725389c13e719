#include "hrgap/pchip.hpp"

#include <algorithm>
#include <cmath>

#include "hrgap/errors.hpp"

namespace hrgap {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// One-sided three-point slope estimate for a boundary knot, clamped so it
// never points against the nearest secant and never exceeds three times it.
double edge_slope(double h0, double h1, double d0, double d1) {
  double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(m) != sign(d0)) {
    m = 0.0;
  } else if (sign(d0) != sign(d1) && std::abs(m) > 3.0 * std::abs(d0)) {
    m = 3.0 * d0;
  }
  return m;
}

}  // namespace

PchipCurve::PchipCurve(const ObservedPoints& points) : xs_(points.xs), ys_(points.ys) {
  const Index n = xs_.size();
  if (n < 2) throw InsufficientContextError("pchip needs at least 2 observed points");

  const ArrayXd h = xs_.tail(n - 1) - xs_.head(n - 1);
  const ArrayXd d = (ys_.tail(n - 1) - ys_.head(n - 1)) / h;

  slopes_.resize(n);
  if (n == 2) {
    slopes_[0] = slopes_[1] = d[0];
  } else {
    for (Index i = 1; i < n - 1; ++i) {
      if (d[i - 1] == 0.0 || d[i] == 0.0 || sign(d[i - 1]) != sign(d[i])) {
        slopes_[i] = 0.0;
      } else {
        // Weighted harmonic mean of the adjacent secants.
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
    slopes_[0] = edge_slope(h[0], h[1], d[0], d[1]);
    slopes_[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  }

  segments_.resize(static_cast<std::size_t>(n - 1));
  for (Index i = 0; i < n - 1; ++i) {
    const double hi = h[i];
    const double di = d[i];
    const double m0 = slopes_[i];
    const double m1 = slopes_[i + 1];
    Segment& s = segments_[static_cast<std::size_t>(i)];
    s.c0 = ys_[i];
    s.c1 = m0;
    s.c2 = (3.0 * di - 2.0 * m0 - m1) / hi;
    s.c3 = (m0 + m1 - 2.0 * di) / (hi * hi);
  }
}

double PchipCurve::operator()(double x) const {
  const Index n = xs_.size();
  if (x < xs_[0] || x > xs_[n - 1]) {
    throw OutOfRangeError("pchip target outside the observed hull");
  }
  // Rightmost interval with xs_[i] <= x (the last interval takes x == back).
  const double* begin = xs_.data();
  const double* it = std::upper_bound(begin, begin + n, x);
  Index i = static_cast<Index>(it - begin) - 1;
  i = std::clamp<Index>(i, 0, n - 2);
  return segments_[static_cast<std::size_t>(i)].eval(x - xs_[i]);
}

ArrayXd PchipCurve::eval(const ArrayXd& xs) const {
  ArrayXd out(xs.size());
  for (Index i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

}  // namespace hrgap
