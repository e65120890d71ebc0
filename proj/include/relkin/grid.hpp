#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace relkin {

/// Finite evaluation grid discretizing the quantifiers "for any lambda > 0
/// and speeds in [0, c)". Speeds are spaced uniformly on [0, beta_max];
/// wavelengths follow `spacing` over [lambda_low, lambda_high].
struct GridSpec {
  enum class Spacing { uniform, geometric };

  int n_lambda = 5;
  int n_beta = 25;
  double beta_max = 0.99;
  double lambda_low = 0.5;
  double lambda_high = 8.0;
  Spacing spacing = Spacing::geometric;

  void validate() const {
    if (n_lambda < 2 || n_beta < 2) {
      throw std::invalid_argument("GridSpec: n_lambda and n_beta must be >= 2");
    }
    if (!(lambda_low > 0.0 && lambda_low < lambda_high)) {
      throw std::invalid_argument("GridSpec: need 0 < lambda_low < lambda_high");
    }
    if (!(beta_max > 0.0 && beta_max <= 1.0 - 1e-9)) {
      throw std::invalid_argument("GridSpec: beta_max must lie in (0, 1 - 1e-9]");
    }
  }

  [[nodiscard]] std::vector<double> lambdas() const;
  [[nodiscard]] std::vector<double> betas() const;

  /// Coarse grid used by the degree-six cancellation check.
  static GridSpec dc_default() {
    GridSpec g;
    g.n_lambda = 4;
    g.n_beta = 8;
    return g;
  }
};

}  // namespace relkin
