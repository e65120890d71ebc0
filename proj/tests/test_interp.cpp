#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "relkin/interp.hpp"
#include "relkin/monotone_map.hpp"

using namespace relkin;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return out;
}

}  // namespace

TEST_CASE("MonotoneCubic reproduces collinear data exactly") {
  const MonotoneCubic line({0.0, 0.25, 0.3, 0.8, 1.0}, {0.0, 0.5, 0.6, 1.6, 2.0});
  for (double x : {0.1, 0.27, 0.5, 0.77, 0.95}) {
    CHECK(line(x) == doctest::Approx(2.0 * x).epsilon(1e-15));
  }
}

TEST_CASE("MonotoneCubic construction validates its knots") {
  CHECK_THROWS_AS(MonotoneCubic({0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneCubic({0.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneCubic({0.0, 0.5, 1.0}, {0.0, 0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneCubic({0.0, 0.5, 1.0}, {0.0, 0.6, 0.2}), std::invalid_argument);
}

TEST_CASE("MonotoneCubic is strictly monotone between knots") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> step(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x{0.0}, y{0.0};
    for (int k = 0; k < 12; ++k) {
      x.push_back(x.back() + step(rng));
      y.push_back(y.back() + step(rng) * step(rng) * 3.0);
    }
    const bool decreasing = trial % 2 == 1;
    if (decreasing) {
      for (double& v : y) v = -v;
    }
    const MonotoneCubic interp(x, y);
    double prev = interp(x.front());
    for (double t : linspace(x.front(), x.back(), 400)) {
      if (t == x.front()) continue;
      const double v = interp(t);
      if (decreasing) {
        CHECK(v < prev);
      } else {
        CHECK(v > prev);
      }
      prev = v;
    }
  }
}

TEST_CASE("MonotoneCubic inverse then map returns the input to 1e-12 relative") {
  std::vector<double> x = linspace(0.0, 0.95, 40);
  std::vector<double> y;
  for (double v : x) y.push_back(std::tanh(1.7 * std::atanh(v)));
  const MonotoneCubic interp(x, y);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 0.95);
  for (int k = 0; k < 200; ++k) {
    const double t = dist(rng);
    const double v = interp(t);
    const double back = interp(interp.inverse(v));
    CHECK(std::abs(back - v) <= 1e-12 * std::max(1.0, std::abs(v)));
  }
  // Decreasing branch.
  std::vector<double> yd;
  for (double v : x) yd.push_back(std::sqrt((1.0 - v) / (1.0 + v)));
  const MonotoneCubic dec(x, yd);
  for (int k = 0; k < 200; ++k) {
    const double t = dist(rng);
    const double v = dec(t);
    CHECK(std::abs(dec(dec.inverse(v)) - v) <= 1e-12 * std::abs(v));
  }
}

TEST_CASE("MonotoneCubic rejects queries outside the hull") {
  const MonotoneCubic interp({0.0, 1.0}, {0.0, 2.0});
  CHECK_THROWS_AS(static_cast<void>(interp(-0.1)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(interp(1.1)), std::domain_error);
  CHECK_THROWS_AS(static_cast<void>(interp.inverse(2.5)), std::domain_error);
  CHECK(interp(0.0) == 0.0);
  CHECK(interp(1.0) == 2.0);
}

TEST_CASE("linear kind interpolates piecewise linearly") {
  const MonotoneCubic interp({0.0, 1.0, 3.0}, {0.0, 1.0, 2.0}, MonotoneCubic::Kind::linear);
  CHECK(interp(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(interp(2.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("MonotoneMap validates knots and the (0,0) anchor") {
  CHECK_THROWS_AS(MonotoneMap::from_knots({0.1, 0.5}, {0.1, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneMap::from_knots({0.0, 1.0}, {0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneMap::from_knots({0.0, 0.5}, {0.0, 1.0}), std::invalid_argument);
  const MonotoneMap u = MonotoneMap::from_knots({0.0, 0.5, 0.9}, {0.0, 0.4, 0.8});
  CHECK(u.is_tabulated());
  CHECK(u.hull_max() == 0.9);
  CHECK_THROWS_AS(static_cast<void>(u(0.95)), std::domain_error);
  CHECK(u(0.5) == 0.4);
  CHECK(u.inverse(0.4) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("builtin analytic maps have exact inverses") {
  const MonotoneMap id = MonotoneMap::identity();
  CHECK_FALSE(id.is_tabulated());
  CHECK(id(0.73) == 0.73);
  CHECK(id.inverse(0.73) == 0.73);
  CHECK_THROWS_AS(static_cast<void>(id(-0.2)), std::domain_error);

  const MonotoneMap bridge = MonotoneMap::lf_bridge();
  CHECK(bridge(0.0) == 0.0);
  CHECK(bridge(0.6) == doctest::Approx(0.36 / 1.64).epsilon(1e-15));
  for (double b : {0.1, 0.35, 0.6, 0.85, 0.99}) {
    CHECK(bridge.inverse(bridge(b)) == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("analytic map without a closed-form inverse falls back to bisection") {
  const MonotoneMap u = MonotoneMap::analytic(
      [](double b) { return b * b * (2.0 - b); }, nullptr, "cube-ish");
  for (double b : {0.2, 0.5, 0.8}) {
    CHECK(u.inverse(u(b)) == doctest::Approx(b).epsilon(1e-11));
  }
}
