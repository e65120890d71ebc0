#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "relkin/monotone_map.hpp"
#include "relkin/types.hpp"

namespace relkin {

/// Blue-shift factor for an approaching source:
/// L(lambda, v) = lambda * sqrt((1 - beta) / (1 + beta)).
[[nodiscard]] inline Wavelength doppler_de(Wavelength lambda, SpeedFraction v) {
  const double b = v.value();
  return Wavelength(lambda.value() * std::sqrt((1.0 - b) / (1.0 + b)));
}

/// Collinear composition of speeds: (b1 + b2) / (1 + b1 b2).
[[nodiscard]] inline SpeedFraction velocity_add_av(SpeedFraction v, SpeedFraction w) {
  const double b1 = v.value(), b2 = w.value();
  const double r = (b1 + b2) / (1.0 + b1 * b2);
  return SpeedFraction(std::min(r, kBetaSupremum));
}

/// Power-law shift L(lambda, v) = lambda * ((1 - beta) / (1 + beta))^xi.
[[nodiscard]] inline Wavelength doppler_star(Wavelength lambda, SpeedFraction v, Exponent xi) {
  const double b = v.value();
  return Wavelength(lambda.value() * std::pow((1.0 - b) / (1.0 + b), xi.value()));
}

/// Contraction law L(lambda, v) = lambda * sqrt(1 - beta^2).
[[nodiscard]] inline Wavelength lorentz_fitzgerald(Wavelength lambda, SpeedFraction v) {
  const double b = v.value();
  return Wavelength(lambda.value() * std::sqrt(1.0 - b * b));
}

/// Composition of perpendicular speeds: sqrt(b1^2 + b2^2 - b1^2 b2^2).
[[nodiscard]] inline SpeedFraction velocity_add_perp(SpeedFraction v, SpeedFraction w) {
  const double b1 = v.value(), b2 = w.value();
  const double r = std::sqrt(b1 * b1 + b2 * b2 - b1 * b1 * b2 * b2);
  return SpeedFraction(std::min(r, kBetaSupremum));
}

/// Bridge map beta^2 / (2 - beta^2); satisfies
/// sqrt((1 - u(b)) / (1 + u(b))) = sqrt(1 - b^2) identically.
[[nodiscard]] inline SpeedFraction u_lf(SpeedFraction v) {
  const double b = v.value();
  return SpeedFraction(b * b / (2.0 - b * b));
}

/// Inverse of the bridge map: sqrt(2 t / (1 + t)).
[[nodiscard]] inline SpeedFraction u_lf_inverse(SpeedFraction t) {
  const double x = t.value();
  return SpeedFraction(std::min(std::sqrt(2.0 * x / (1.0 + x)), kBetaSupremum));
}

/// Conjugated shift L(lambda, v) = lambda * ((1 - u(beta)) / (1 + u(beta)))^xi.
/// Throws std::domain_error if beta is outside u's evaluable hull.
[[nodiscard]] inline Wavelength doppler_general(Wavelength lambda, SpeedFraction v,
                                                const MonotoneMap& u, Exponent xi) {
  const double ub = u(v.value());
  return Wavelength(lambda.value() * std::pow((1.0 - ub) / (1.0 + ub), xi.value()));
}

/// Conjugated composition u^{-1}((u(b1) + u(b2)) / (1 + u(b1) u(b2))).
/// Throws std::domain_error if an argument leaves u's hull or the inverse
/// fails to bracket.
[[nodiscard]] inline SpeedFraction velocity_add_general(SpeedFraction v, SpeedFraction w,
                                                        const MonotoneMap& u) {
  const double a = u(v.value()), b = u(w.value());
  double t = (a + b) / (1.0 + a * b);
  if (t > 0.5) {
    // Complement form: 1 - a and 1 - b are exact subtractions here, so the
    // distance to 1 keeps full relative precision near the open endpoint.
    t = 1.0 - (1.0 - a) * (1.0 - b) / (1.0 + a * b);
  }
  t = std::min(t, kBetaSupremum);
  return SpeedFraction(std::min(u.inverse(t), kBetaSupremum));
}

/// A Doppler-type law as a black box: (lambda, beta) -> lambda', with a
/// descriptive tag. Strict monotonicity (increasing in lambda, decreasing in
/// beta) is expected but spot-checked by callers, not enforced here.
struct DopplerLaw {
  std::function<double(double, double)> fn;
  std::string tag;

  [[nodiscard]] double eval(double lambda, double beta) const { return fn(lambda, beta); }
  [[nodiscard]] Wavelength operator()(Wavelength lambda, SpeedFraction v) const {
    return Wavelength(fn(lambda.value(), v.value()));
  }
};

/// A composition law as a black box: (b1, b2) -> b3, with a descriptive tag.
struct CompositionLaw {
  std::function<double(double, double)> fn;
  std::string tag;

  [[nodiscard]] double eval(double b1, double b2) const { return fn(b1, b2); }
  [[nodiscard]] SpeedFraction operator()(SpeedFraction v, SpeedFraction w) const {
    return SpeedFraction(fn(v.value(), w.value()));
  }

  /// Identity spot-check |op(0,b) - b| and |op(b,0) - b| at one probe.
  [[nodiscard]] double identity_defect(double beta = 0.375) const {
    return std::max(std::abs(fn(0.0, beta) - beta), std::abs(fn(beta, 0.0) - beta));
  }
};

inline DopplerLaw doppler_de_law() {
  return {[](double l, double b) { return l * std::sqrt((1.0 - b) / (1.0 + b)); }, "de"};
}

inline DopplerLaw lorentz_fitzgerald_law() {
  return {[](double l, double b) { return l * std::sqrt(1.0 - b * b); }, "lf"};
}

inline DopplerLaw doppler_star_law(Exponent xi) {
  const double e = xi.value();
  return {[e](double l, double b) { return l * std::pow((1.0 - b) / (1.0 + b), e); },
          "dstar(xi=" + detail::format_full(e) + ")"};
}

inline DopplerLaw doppler_general_law(MonotoneMap u, Exponent xi) {
  const double e = xi.value();
  return {[u = std::move(u), e](double l, double b) {
            const double ub = u(b);
            return l * std::pow((1.0 - ub) / (1.0 + ub), e);
          },
          "dgen(xi=" + detail::format_full(e) + ")"};
}

inline CompositionLaw velocity_add_av_law() {
  return {[](double a, double b) { return std::min((a + b) / (1.0 + a * b), kBetaSupremum); },
          "av"};
}

inline CompositionLaw velocity_add_perp_law() {
  return {[](double a, double b) {
            return std::min(std::sqrt(a * a + b * b - a * a * b * b), kBetaSupremum);
          },
          "astar"};
}

inline CompositionLaw velocity_add_general_law(MonotoneMap u) {
  return {[u = std::move(u)](double a, double b) {
            return velocity_add_general(SpeedFraction(a), SpeedFraction(b), u).value();
          },
          "agen"};
}

}  // namespace relkin
