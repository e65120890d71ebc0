#pragma once

#include <stdexcept>
#include <string>

namespace relkin {

/// The evaluated law is not of the multiplicatively factored form
/// L(lambda, v) = lambda * f(v).
class HomogeneityError : public std::runtime_error {
 public:
  explicit HomogeneityError(const std::string& what) : std::runtime_error(what) {}
};

/// Sampled factor data is not consistent with a single power law.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// A root-finding step could not bracket a solution; the operation under
/// study is discontinuous, non-monotone, or lacks the identity element.
class BisectionError : public std::runtime_error {
 public:
  explicit BisectionError(const std::string& what) : std::runtime_error(what) {}
};

/// A tabulation that must be strictly increasing is not.
class MonotonicityError : public std::runtime_error {
 public:
  explicit MonotonicityError(const std::string& what) : std::runtime_error(what) {}
};

/// The Doppler law and the composition law do not share one underlying map.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relkin
