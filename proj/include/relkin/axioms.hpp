#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relkin/grid.hpp"
#include "relkin/kinematics.hpp"

namespace relkin {

/// Relative dead band for ordinal comparisons: values closer than this are
/// treated as tied and either ordering is accepted.
inline constexpr double kOrdinalBand = 1e-12;

/// Machine-readable outcome of one axiom check over a grid.
///
/// For equational axioms, max_violation is the largest relative residual and
/// passed means max_violation <= tolerance. For ordinal axioms, passed means
/// no ordering counterexample was found; max_violation is then the margin of
/// the worst counterexample (0 if none) and tolerance reports the dead band.
/// worst_tuple holds the offending inputs verbatim, in the reading order of
/// the axiom statement. detail carries diagnostics (failed sub-check name or
/// a propagated evaluation error).
struct CheckReport {
  std::string axiom;
  bool passed = false;
  double max_violation = 0.0;
  std::vector<double> worst_tuple;
  double tolerance = 0.0;
  GridSpec grid;
  std::string detail;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Cascade law: L(L(lambda, v), w) = L(lambda, v (+) w), relative residual.
CheckReport check_R(const DopplerLaw& L, const CompositionLaw& op, const GridSpec& grid,
                    double tol);

/// Order invariance under common composition:
/// L(l, v) <= L(l', v')  <=>  L(l, v (+) w) <= L(l', v' (+) w).
CheckReport check_M(const DopplerLaw& L, const CompositionLaw& op, const GridSpec& grid);

/// Left order-invariance under similarity transformations of the first slot:
/// H(x, y) <= H(z, w)  <=>  H(a x, y) <= H(a z, w) for each scale a.
CheckReport check_LOI(const DopplerLaw& L, const GridSpec& grid,
                      std::span<const double> scales);

/// Default scale set for check_LOI.
inline const std::vector<double> kDefaultLoiScales = {0.5, 2.0, 7.0};

/// Double cancellation:
/// H(x,y) <= H(z,w) and H(z,s) <= H(t,y) imply H(x,s) <= H(t,w).
/// Degree six in the grid; the supplied grid is capped at 4 wavelengths and
/// 8 speeds (the capped grid is the one reported).
CheckReport check_DC(const DopplerLaw& L, const GridSpec& grid);

/// Identity element, closure, strict monotonicity per slot, commutativity
/// and associativity of a composition law; the failed sub-check is named in
/// `detail`.
CheckReport check_group_structure(const CompositionLaw& op, const GridSpec& grid, double tol);

/// Exponents solving ((1-x)/(1+x))^xi = sqrt(1-x^2) at x1 and x2. Distinct
/// values witness that no single exponent turns the power-law shift into the
/// contraction law. Throws std::domain_error unless both lie in (0, 1).
std::pair<double, double> witness_lf_vs_dstar(double x1, double x2);

}  // namespace relkin
