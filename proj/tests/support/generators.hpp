#pragma once

// Deterministic random generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "relkin/kinematics.hpp"
#include "relkin/monotone_map.hpp"

namespace relkin::testgen {

/// Random tabulated monotone map with 8-16 knots. Interior knots are kept
/// tame (bounded secant slopes and slope jumps) so that dense resampling of
/// the map stays accurate; two tail knots extend the hull close to 1 so that
/// grid compositions up to beta = 0.99 stay invertible.
inline MonotoneMap random_tabulated_u(std::mt19937& rng) {
  std::uniform_int_distribution<int> count_dist(5, 13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int n_interior = count_dist(rng);
    std::vector<double> xs{0.0}, ys{0.0};
    bool ok = true;
    double x = 0.0, y = 0.0;
    for (int k = 0; k < n_interior; ++k) {
      // March toward (0.93, 0.92) with bounded secant slopes.
      const double remaining_x = 0.93 - x;
      const double dx = remaining_x * (0.4 + 0.6 * unif(rng)) / (n_interior - k);
      double slope = 0.5 + 2.0 * unif(rng);
      if (!xs.empty() && xs.size() > 1) {
        const double prev_slope =
            (ys.back() - ys[ys.size() - 2]) / (xs.back() - xs[xs.size() - 2]);
        slope = std::clamp(slope, prev_slope - 0.8, prev_slope + 0.8);
        slope = std::clamp(slope, 0.4, 2.5);
      }
      const double dy = slope * dx;
      if (dx < 0.03 || y + dy > 0.92) {
        ok = false;
        break;
      }
      x += dx;
      y += dy;
      xs.push_back(x);
      ys.push_back(y);
    }
    if (!ok || xs.size() < 4) continue;
    // Tail: reach toward 1 so compositions on the default grid stay in hull.
    xs.push_back(0.995);
    ys.push_back(0.5 * (ys.back() + 1.0));
    xs.push_back(1.0 - 1e-11);
    ys.push_back(1.0 - 1e-11);
    MonotoneMap u = MonotoneMap::from_knots(xs, ys);
    const double mid = u(0.5);
    if (mid < 0.25 || mid > 0.75) continue;
    return u;
  }
  throw std::logic_error("random_tabulated_u: generation failed");
}

/// Random analytic monotone map u = tanh(g(atanh beta)) with
/// g(r) = a r + b (1 - exp(-c r)); strictly increasing, g(0) = 0, onto.
/// The inverse bisects in rapidity space. Slopes are capped so that grid
/// compositions keep their distance to 1 above the double-precision
/// complement floor (1 - t quantizes at 1.1e-16 absolute).
inline MonotoneMap random_analytic_u(std::mt19937& rng) {
  std::uniform_real_distribution<double> a_dist(0.5, 1.15);
  std::uniform_real_distribution<double> b_dist(0.0, 0.35);
  std::uniform_real_distribution<double> c_dist(0.5, 2.0);
  const double a = a_dist(rng), b = b_dist(rng), c = c_dist(rng);
  auto g = [a, b, c](double r) { return a * r + b * (1.0 - std::exp(-c * r)); };
  auto fwd = [g](double beta) { return std::tanh(g(std::atanh(beta))); };
  auto inv = [g](double t) {
    const double target = std::atanh(t);
    double lo = 0.0, hi = 1.0;
    while (g(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) <= target ? lo : hi) = mid;
    }
    return std::tanh(0.5 * (lo + hi));
  };
  return MonotoneMap::analytic(fwd, inv, "random-analytic");
}

/// Largest pointwise gap between two maps on a uniform grid.
inline double max_gap(const MonotoneMap& u1, const MonotoneMap& u2, double beta_max = 0.99,
                      int n = 101) {
  double gap = 0.0;
  for (int k = 0; k < n; ++k) {
    const double b = beta_max * k / (n - 1);
    gap = std::max(gap, std::abs(u1(b) - u2(b)));
  }
  return gap;
}

/// Generator pair (L, op) sharing one map and exponent.
struct LawPair {
  DopplerLaw L;
  CompositionLaw op;
  MonotoneMap u;
  double xi;
};

inline LawPair random_pair(std::mt19937& rng, bool tabulated) {
  MonotoneMap u = tabulated ? random_tabulated_u(rng) : random_analytic_u(rng);
  std::uniform_real_distribution<double> xi_dist(0.1, 3.0);
  const double xi = xi_dist(rng);
  return {doppler_general_law(u, Exponent(xi)), velocity_add_general_law(u), u, xi};
}

}  // namespace relkin::testgen
