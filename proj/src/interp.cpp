#include "relkin/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace relkin {

namespace {

// Cubic Hermite basis, see Fritsch & Butland 1984, SIAM J Sci Stat Comput 5, 300.
inline double h00(double t) { return (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t); }
inline double h10(double t) { return t * (1.0 - t) * (1.0 - t); }

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, Kind kind)
    : x_(std::move(x)), y_(std::move(y)), kind_(kind) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need at least two knots and matching sizes");
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(x_[k] < x_[k + 1])) {
      throw std::invalid_argument("MonotoneCubic: x knots must be strictly increasing");
    }
  }
  increasing_ = y_[1] > y_[0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const bool up = y_[k + 1] > y_[k];
    if (y_[k + 1] == y_[k] || up != increasing_) {
      throw std::invalid_argument("MonotoneCubic: y knots must be strictly monotone");
    }
  }
  if (kind_ == Kind::linear) return;

  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    d[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  tangent_.assign(n, 0.0);
  // Weighted parabolic tangents (exact on quadratics for any knot spacing),
  // projected into the Fritsch-Carlson monotone box [0, 3 min|d|].
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0) continue;
    const double m = (h[k] * d[k - 1] + h[k - 1] * d[k]) / (h[k - 1] + h[k]);
    const double cap = 3.0 * std::min(std::abs(d[k - 1]), std::abs(d[k]));
    tangent_[k] = increasing_ ? std::min(m, cap) : std::max(m, -cap);
  }
  // Three-point end slopes with the same projection.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    const double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 < 0.0) return 0.0;
    if (std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return m;
  };
  if (n == 2) {
    tangent_[0] = tangent_[1] = d[0];
  } else {
    tangent_[0] = end_slope(h[0], h[1], d[0], d[1]);
    tangent_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  }
}

double MonotoneCubic::operator()(double x) const {
  const double slack = 1e-12 * (x_.back() - x_.front());
  if (x < x_.front() - slack || x > x_.back() + slack) {
    throw std::domain_error("MonotoneCubic: x = " + std::to_string(x) +
                            " outside knot hull [" + std::to_string(x_.front()) + ", " +
                            std::to_string(x_.back()) + "]");
  }
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  if (kind_ == Kind::linear) {
    return y_[k] + t * (y_[k + 1] - y_[k]);
  }
  return y_[k] * h00(t) + h * tangent_[k] * h10(t) +
         y_[k + 1] * h00(1.0 - t) - h * tangent_[k + 1] * h10(1.0 - t);
}

double MonotoneCubic::inverse(double y) const {
  const double lo_y = increasing_ ? y_.front() : y_.back();
  const double hi_y = increasing_ ? y_.back() : y_.front();
  const double slack = 1e-12 * (hi_y - lo_y) + 1e-300;
  if (y < lo_y - slack || y > hi_y + slack) {
    throw std::domain_error("MonotoneCubic::inverse: y = " + std::to_string(y) +
                            " outside value hull [" + std::to_string(lo_y) + ", " +
                            std::to_string(hi_y) + "]");
  }
  if (increasing_ ? (y <= y_.front()) : (y >= y_.front())) return x_.front();
  if (increasing_ ? (y >= y_.back()) : (y <= y_.back())) return x_.back();
  // Narrow to the bracketing knot interval, then bisect inside it.
  std::size_t lo_k = 0, hi_k = x_.size() - 1;
  while (hi_k - lo_k > 1) {
    const std::size_t mid = (lo_k + hi_k) / 2;
    const bool below = increasing_ ? (y_[mid] <= y) : (y_[mid] >= y);
    (below ? lo_k : hi_k) = mid;
  }
  double lo = x_[lo_k], hi = x_[hi_k];
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = (*this)(mid);
    const bool below = increasing_ ? (v <= y) : (v >= y);
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace relkin
