#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relkin {

/// Largest representable speed fraction below 1. Composition results are
/// saturated here so that closure on [0,1) survives floating-point rounding.
inline constexpr double kBetaSupremum = 0x1.fffffffffffffp-1;

namespace detail {

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view text, const char* what) {
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + s + "'");
  }
  return v;
}

}  // namespace detail

/// Speed as a fraction of the speed of light, beta = v/c in [0, 1).
class SpeedFraction {
 public:
  SpeedFraction() = default;
  explicit SpeedFraction(double beta) : beta_(beta) {
    if (!(beta >= 0.0 && beta < 1.0)) {
      throw std::domain_error("SpeedFraction: beta must lie in [0, 1), got " +
                              detail::format_full(beta));
    }
  }

  [[nodiscard]] double value() const noexcept { return beta_; }

  /// Decimal text with 17 significant digits; round-trips exactly.
  [[nodiscard]] std::string str() const { return detail::format_full(beta_); }

  static SpeedFraction parse(std::string_view text) {
    return SpeedFraction(detail::parse_double(text, "SpeedFraction"));
  }

 private:
  double beta_ = 0.0;
};

/// Wavelength as an abstract positive scalar.
class Wavelength {
 public:
  Wavelength() = default;
  explicit Wavelength(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::domain_error("Wavelength: value must be positive and finite, got " +
                              detail::format_full(value));
    }
  }

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] std::string str() const { return detail::format_full(value_); }

  static Wavelength parse(std::string_view text) {
    return Wavelength(detail::parse_double(text, "Wavelength"));
  }

 private:
  double value_ = 1.0;
};

/// Positive Doppler exponent.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(double xi) : xi_(xi) {
    if (!(xi > 0.0) || !std::isfinite(xi)) {
      throw std::domain_error("Exponent: xi must be positive and finite, got " +
                              detail::format_full(xi));
    }
  }

  [[nodiscard]] double value() const noexcept { return xi_; }

  static Exponent parse(std::string_view text) {
    return Exponent(detail::parse_double(text, "Exponent"));
  }

 private:
  double xi_ = 1.0;
};

}  // namespace relkin
