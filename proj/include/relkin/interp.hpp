#pragma once

#include <span>
#include <vector>

namespace relkin {

/// Piecewise interpolant through strictly monotone data, monotone by
/// construction. The cubic kind uses Fritsch-Carlson limited tangents
/// (Butland's formula, three-point end slopes clipped into the monotone
/// region); the interpolant is C1 and strictly monotone between knots.
/// Evaluation outside the knot hull throws std::domain_error.
class MonotoneCubic {
 public:
  enum class Kind { cubic, linear };

  /// x strictly increasing, y strictly monotone (either direction),
  /// at least two knots. Throws std::invalid_argument otherwise.
  MonotoneCubic(std::vector<double> x, std::vector<double> y, Kind kind = Kind::cubic);

  [[nodiscard]] double operator()(double x) const;

  /// Numeric inverse by bisection to 1e-13 absolute in x.
  /// Throws std::domain_error if y is outside the value hull.
  [[nodiscard]] double inverse(double y) const;

  [[nodiscard]] double x_min() const noexcept { return x_.front(); }
  [[nodiscard]] double x_max() const noexcept { return x_.back(); }
  [[nodiscard]] double y_at_x_min() const noexcept { return y_.front(); }
  [[nodiscard]] double y_at_x_max() const noexcept { return y_.back(); }
  [[nodiscard]] bool increasing() const noexcept { return increasing_; }
  [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
  [[nodiscard]] std::span<const double> xs() const noexcept { return x_; }
  [[nodiscard]] std::span<const double> ys() const noexcept { return y_; }
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  std::vector<double> x_, y_, tangent_;
  Kind kind_;
  bool increasing_ = true;
};

/// Bisection tolerance used for every numeric inverse in the library.
inline constexpr double kBisectionTol = 1e-13;

}  // namespace relkin
