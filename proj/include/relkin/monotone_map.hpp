#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relkin/interp.hpp"

namespace relkin {

/// A strictly increasing continuous bijection of [0, 1) onto [0, 1) with a
/// numeric inverse. Two representations share this interface:
///
///  * tabulated  — strictly increasing knots in [0,1) x [0,1), first knot
///    (0, 0), interpolated with a monotone piecewise cubic (default) or a
///    piecewise linear. Evaluation is restricted to the knot hull; queries
///    outside it throw std::domain_error. The inverse bisects to 1e-13.
///  * analytic   — closed-form forward callable with an optional closed-form
///    inverse (bisection fallback), defined on all of [0, 1).
///
/// Instances are immutable and cheap to copy.
class MonotoneMap {
 public:
  using Interp = MonotoneCubic::Kind;

  static MonotoneMap from_knots(std::vector<double> x, std::vector<double> y,
                                Interp interp = Interp::cubic);

  static MonotoneMap analytic(std::function<double(double)> forward,
                              std::function<double(double)> inverse_fn,
                              std::string name);

  /// The identity map on [0, 1).
  static MonotoneMap identity();

  /// The bridge map beta^2 / (2 - beta^2), with closed-form inverse
  /// sqrt(2 t / (1 + t)); conjugates the contraction law into the
  /// square-root Doppler form.
  static MonotoneMap lf_bridge();

  [[nodiscard]] double operator()(double beta) const;
  [[nodiscard]] double inverse(double t) const;

  [[nodiscard]] bool is_tabulated() const noexcept;
  /// Inclusive upper end of the evaluable domain (last knot for tabulated
  /// maps, the supremum below 1 for analytic maps).
  [[nodiscard]] double hull_max() const noexcept;
  /// Value at hull_max().
  [[nodiscard]] double value_max() const noexcept;
  [[nodiscard]] const std::string& name() const noexcept;

  /// Knot tabulation; analytic maps are sampled on demand at `n` points.
  [[nodiscard]] std::vector<std::pair<double, double>> knots(std::size_t n = 33) const;

 private:
  struct Impl;
  explicit MonotoneMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace relkin
