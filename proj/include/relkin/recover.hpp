#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "relkin/grid.hpp"
#include "relkin/kinematics.hpp"

namespace relkin {

/// Samples of the multiplicative factor f(beta) = L(1, beta).
struct FactorSamples {
  std::vector<double> betas;     // strictly increasing, betas[0] == 0
  std::vector<double> f_values;  // in (0, 1], f_values[0] == 1 within 1e-12, decreasing
  double homogeneity_dev = 0.0;  // worst relative probe deviation from lambda * f

  void validate() const;
};

inline const std::vector<double> kDefaultHomogeneityProbes = {0.5, 3.0};

/// Factor a Doppler-type law: f(beta) = L(1, beta), verifying homogeneity
/// L(lambda, beta) = lambda * f(beta) at the probe wavelengths to 1e-10
/// relative (worst deviation recorded). Throws HomogeneityError if the
/// deviation exceeds 1e-6. `betas` must start at 0.
FactorSamples extract_f(const DopplerLaw& L, std::span<const double> betas,
                        std::span<const double> probes = kDefaultHomogeneityProbes);

struct ExponentFit {
  Exponent xi{1.0};
  double max_residual = 0.0;  // worst relative misfit of f against the refit curve
};

/// Least-squares fit through the origin of ln f(beta) against
/// ln((1 - beta)/(1 + beta)); beta = 0 rows are skipped (vanishing
/// regressor). Throws FitError if any f value is non-positive or the refit
/// residual exceeds `residual_cap`.
ExponentFit fit_power_exponent(const FactorSamples& samples, double residual_cap = 1e-6);

/// Tabulated additive coordinate of a composition law: phi(0) = 0,
/// phi(unit_point) = 1, phi(a (+) b) = phi(a) + phi(b).
struct AdditiveRep {
  std::vector<double> betas;  // strictly increasing from 0
  std::vector<double> phi;    // strictly increasing from 0; phi(unit_point) == 1
  double unit_point = 0.5;
  int depth = 20;
  double additivity_residual = 0.0;  // measured on 100 random tabulated pairs

  /// Interpolated phi; throws std::domain_error outside the tabulated hull.
  [[nodiscard]] double operator()(double beta) const;
  [[nodiscard]] double beta_top() const { return betas.back(); }
  [[nodiscard]] double phi_top() const { return phi.back(); }

  // Populated by build_additive_rep; monotone cubic over the tabulation.
  std::shared_ptr<const MonotoneCubic> interp;
};

/// Numerically construct the additive coordinate of `op`: assign
/// phi(unit_point) = 1, solve h (+) h = target by bisection for dyadic
/// halves down to level `depth`, double while below beta_max, and fill the
/// dyadic lattice by composing the powers. Throws BisectionError if a
/// halving fails to bracket and MonotonicityError if the tabulated speeds
/// are not strictly increasing.
AdditiveRep build_additive_rep(const CompositionLaw& op, double unit_point, int depth,
                               double beta_max);

/// Gauge factor k with tanh(k * phi(anchor)) = anchor, pinning u(anchor) =
/// anchor. Throws std::domain_error if anchor is outside phi's hull or
/// phi(anchor) == 0.
double fix_gauge(const AdditiveRep& phi, double anchor);

/// u(beta) = tanh(k * phi(beta)) tabulated at phi's speeds.
MonotoneMap recover_u(const AdditiveRep& phi, double gauge_k);

struct RecoverConfig {
  double unit_point = 0.5;
  double anchor = 0.5;
  int depth = 20;
  double beta_max = 0.99;
  GridSpec grid{};                 // residual evaluation and exponent estimation
  double additivity_cap = 1e-6;    // gate on the measured additivity residual
  double xi_spread_tol = 1e-4;     // relative spread of pointwise exponent estimates
  std::vector<double> homogeneity_probes = kDefaultHomogeneityProbes;
};

/// Recovered representation pair (u, xi) with its gauge and residuals.
struct FitReport {
  Exponent xi{0.5};
  double gauge_k = 1.0;
  double anchor = 0.5;
  MonotoneMap u = MonotoneMap::identity();
  AdditiveRep phi;
  double residual_max_L = 0.0;   // worst relative rebuilt-Doppler error on the grid
  double residual_max_op = 0.0;  // worst absolute rebuilt-composition error on the grid
  std::string notes;

  /// phi and u tabulations longer than `max_table` entries are thinned by
  /// stride in the JSON output.
  [[nodiscard]] nlohmann::json to_json(std::size_t max_table = 4096) const;
};

/// Full constructive pipeline: factor L, build the additive coordinate of
/// op, fix the gauge at `anchor`, recover u, estimate xi as the grid median
/// of -ln f(beta) / (2 k phi(beta)), and rebuild both laws to measure
/// reconstruction residuals. Throws ConsistencyError if the pointwise
/// exponent estimates spread beyond xi_spread_tol (the two laws do not share
/// one map) or the additive representation fails its residual gate.
FitReport recover_representation(const DopplerLaw& L, const CompositionLaw& op,
                                 const RecoverConfig& config = {});

}  // namespace relkin
