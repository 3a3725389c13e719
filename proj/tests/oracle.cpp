#include "oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracle {

namespace {

std::size_t check_pair(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("bad pair");
  return a.size();
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Largest i with x[i] <= t, clamped to the last interval.
std::size_t interval_of(const std::vector<double>& x, double t) {
  std::size_t i = 0;
  while (i + 2 < x.size() && x[i + 1] <= t) ++i;
  return i;
}

double hermite_eval(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& m, double t) {
  const std::size_t i = interval_of(x, t);
  const double h = x[i + 1] - x[i];
  const double u = (t - x[i]) / h;
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  return h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
}

// Dense Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) throw std::runtime_error("singular system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> s(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri * n + c] * s[c];
    s[ri] = acc / a[ri * n + ri];
  }
  return s;
}

}  // namespace

double rmse(const std::vector<double>& real, const std::vector<double>& imputed) {
  const std::size_t n = check_pair(real, imputed);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = real[i] - imputed[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(n));
}

double mae(const std::vector<double>& real, const std::vector<double>& imputed) {
  const std::size_t n = check_pair(real, imputed);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(real[i] - imputed[i]);
  return s / static_cast<double>(n);
}

double mape(const std::vector<double>& real, const std::vector<double>& imputed) {
  const std::size_t n = check_pair(real, imputed);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(real[i] - imputed[i]) / real[i];
  return 100.0 * s / static_cast<double>(n);
}

std::optional<double> cohens_distance(const std::vector<double>& real,
                                      const std::vector<double>& imputed) {
  const std::size_t n = check_pair(real, imputed);
  if (n < 2) return std::nullopt;
  const double diff = std::abs(mean(real) - mean(imputed));
  const double pooled = std::sqrt((sample_variance(real) + sample_variance(imputed)) / 2.0);
  if (pooled < 1e-12) {
    if (diff < 1e-12) return 0.0;
    return std::nullopt;
  }
  return diff / pooled;
}

double js_distance(const std::vector<double>& real, const std::vector<double>& imputed,
                   int n_bins) {
  check_pair(real, imputed);
  double lo = real[0], hi = real[0];
  for (double v : real) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : imputed) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) return 0.0;  // single degenerate bin: p == q

  const double width = (hi - lo) / n_bins;
  auto bin_of = [&](double v) {
    // Scan edges from the top; the top edge is inclusive.
    for (int j = n_bins - 1; j > 0; --j) {
      if (v >= lo + width * j) return j;
    }
    return 0;
  };
  std::vector<double> p(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> q(static_cast<std::size_t>(n_bins), 0.0);
  for (double v : real) p[static_cast<std::size_t>(bin_of(v))] += 1.0;
  for (double v : imputed) q[static_cast<std::size_t>(bin_of(v))] += 1.0;
  for (double& v : p) v /= static_cast<double>(real.size());
  for (double& v : q) v /= static_cast<double>(imputed.size());

  double divergence = 0.0;
  for (int j = 0; j < n_bins; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double r = (p[k] + q[k]) / 2.0;
    if (p[k] > 0.0) divergence += 0.5 * p[k] * std::log2(p[k] / r);
    if (q[k] > 0.0) divergence += 0.5 * q[k] * std::log2(q[k] / r);
  }
  return std::clamp(std::sqrt(std::max(divergence, 0.0)), 0.0, 1.0);
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  assert(n >= 2 && y.size() == n);
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  std::vector<double> m(n);
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool opposite_or_flat = (d[i - 1] >= 0.0 && d[i] <= 0.0) ||
                                  (d[i - 1] <= 0.0 && d[i] >= 0.0);
    if (opposite_or_flat) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto edge = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    const auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
    if (sgn(s) != sgn(d0)) return 0.0;
    if (sgn(d0) != sgn(d1) && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s;
  };
  m[0] = edge(h[0], h[1], d[0], d[1]);
  m[n - 1] = edge(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y, double t) {
  return hermite_eval(x, y, pchip_slopes(x, y), t);
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y, double t) {
  const std::size_t n = x.size();
  assert(n >= 4 && y.size() == n);
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }

  // Unknowns are the knot slopes s_i. Rows: not-a-knot at x_1 (equal third
  // derivative across it), C2 continuity at every interior knot, not-a-knot
  // at x_{n-2}. Segment i has y''' = 6*(s_i + s_{i+1} - 2 d_i)/h_i^2.
  std::vector<double> a(n * n, 0.0), b(n, 0.0);
  a[0 * n + 0] = 1.0 / (h[0] * h[0]);
  a[0 * n + 1] = 1.0 / (h[0] * h[0]) - 1.0 / (h[1] * h[1]);
  a[0 * n + 2] = -1.0 / (h[1] * h[1]);
  b[0] = 2.0 * d[0] / (h[0] * h[0]) - 2.0 * d[1] / (h[1] * h[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i * n + (i - 1)] = 1.0 / h[i - 1];
    a[i * n + i] = 2.0 * (1.0 / h[i - 1] + 1.0 / h[i]);
    a[i * n + (i + 1)] = 1.0 / h[i];
    b[i] = 3.0 * (d[i - 1] / h[i - 1] + d[i] / h[i]);
  }
  const std::size_t l = n - 3;  // last interior knot x_{n-2} joins segments l and l+1
  a[(n - 1) * n + (n - 3)] = 1.0 / (h[l] * h[l]);
  a[(n - 1) * n + (n - 2)] = 1.0 / (h[l] * h[l]) - 1.0 / (h[l + 1] * h[l + 1]);
  a[(n - 1) * n + (n - 1)] = -1.0 / (h[l + 1] * h[l + 1]);
  b[n - 1] = 2.0 * d[l] / (h[l] * h[l]) - 2.0 * d[l + 1] / (h[l + 1] * h[l + 1]);

  return hermite_eval(x, y, solve_dense(std::move(a), std::move(b)), t);
}

double windowed_spline_eval(const std::vector<double>& x, const std::vector<double>& y,
                            double t) {
  const std::size_t n = x.size();
  const std::size_t left = interval_of(x, t);
  const std::size_t lo = left >= 5 ? left - 5 : 0;
  const std::size_t hi = std::min(n - 1, left + 6);
  const std::vector<double> wx(x.begin() + static_cast<long>(lo),
                               x.begin() + static_cast<long>(hi) + 1);
  const std::vector<double> wy(y.begin() + static_cast<long>(lo),
                               y.begin() + static_cast<long>(hi) + 1);
  return spline_eval(wx, wy, t);
}

double linear_eval(const std::vector<double>& x, const std::vector<double>& y, double t) {
  const std::size_t i = interval_of(x, t);
  return y[i] + (t - x[i]) * (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
}

double knn_eval(const std::vector<double>& x, const std::vector<double>& y, double t, int k,
                double epsilon) {
  const std::size_t n = x.size();
  assert(n >= 1);
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), n);
  std::vector<bool> used(n, false);
  double weight_sum = 0.0;
  double weighted_value_sum = 0.0;
  for (std::size_t sel = 0; sel < take; ++sel) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (best == n) {
        best = i;
        continue;
      }
      const double di = std::abs(x[i] - t);
      const double db = std::abs(x[best] - t);
      if (di < db || (di == db && x[i] < x[best])) best = i;
    }
    used[best] = true;
    const double w = 1.0 / std::max(std::abs(x[best] - t), epsilon);
    weight_sum += w;
    weighted_value_sum += w * y[best];
  }
  return weighted_value_sum / weight_sum;
}

Plan plan(const std::vector<bool>& present, long gap_len, long spacing) {
  const long n = static_cast<long>(present.size());
  Plan out;
  out.gap_len = gap_len;
  out.spacing = spacing;
  for (long k = 0;; ++k) {
    const long start = spacing + k * (gap_len + spacing);
    if (start + gap_len > n - 1) break;
    bool ok = true;
    for (long i = start; i < start + gap_len; ++i) {
      if (!present[static_cast<std::size_t>(i)]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.starts.push_back(start);
    } else {
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace oracle
