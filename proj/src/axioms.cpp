#include "relkin/axioms.hpp"

#include <cmath>
#include <exception>
#include <limits>

namespace relkin {

std::vector<double> GridSpec::lambdas() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(n_lambda));
  const int n = n_lambda;
  if (spacing == Spacing::geometric) {
    const double ratio = std::log(lambda_high / lambda_low);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = lambda_low * std::exp(ratio * i / (n - 1));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          lambda_low + (lambda_high - lambda_low) * i / (n - 1);
    }
  }
  out.back() = lambda_high;
  return out;
}

std::vector<double> GridSpec::betas() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(n_beta));
  for (int i = 0; i < n_beta; ++i) {
    out[static_cast<std::size_t>(i)] = beta_max * i / (n_beta - 1);
  }
  out.front() = 0.0;
  out.back() = beta_max;
  return out;
}

namespace {

nlohmann::json grid_to_json(const GridSpec& g) {
  return {{"n_lambda", g.n_lambda},
          {"n_beta", g.n_beta},
          {"beta_max", g.beta_max},
          {"lambda_low", g.lambda_low},
          {"lambda_high", g.lambda_high},
          {"spacing", g.spacing == GridSpec::Spacing::geometric ? "geometric" : "uniform"}};
}

// -1 / 0 / +1 ordering of a against b with a relative dead band.
int band_compare(double a, double b, double band) {
  const double scale = std::max(std::abs(a), std::abs(b));
  const double d = a - b;
  if (std::abs(d) <= band * scale) return 0;
  return d > 0.0 ? 1 : -1;
}

double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

CheckReport error_report(std::string axiom, const GridSpec& grid, double tol,
                         const std::exception& e) {
  CheckReport r;
  r.axiom = std::move(axiom);
  r.passed = false;
  r.max_violation = std::numeric_limits<double>::infinity();
  r.tolerance = tol;
  r.grid = grid;
  r.detail = std::string("evaluation error: ") + e.what();
  return r;
}

}  // namespace

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j{{"axiom", axiom},
                   {"passed", passed},
                   {"max_violation", max_violation},
                   {"worst_tuple", worst_tuple},
                   {"tolerance", tolerance},
                   {"grid", grid_to_json(grid)}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

CheckReport check_R(const DopplerLaw& L, const CompositionLaw& op, const GridSpec& grid,
                    double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_R: tol must be positive");
  CheckReport r;
  r.axiom = "R";
  r.tolerance = tol;
  r.grid = grid;
  try {
    const auto lambdas = grid.lambdas();
    const auto betas = grid.betas();
    for (double lam : lambdas) {
      for (double b1 : betas) {
        for (double b2 : betas) {
          const double cascaded = L.eval(L.eval(lam, b1), b2);
          const double composed = L.eval(lam, op.eval(b1, b2));
          const double resid =
              std::abs(cascaded - composed) / std::max(std::abs(composed), 1e-300);
          if (resid > r.max_violation) {
            r.max_violation = resid;
            r.worst_tuple = {lam, b1, b2};
          }
        }
      }
    }
    r.passed = r.max_violation <= tol;
  } catch (const std::exception& e) {
    return error_report("R", grid, tol, e);
  }
  return r;
}

CheckReport check_M(const DopplerLaw& L, const CompositionLaw& op, const GridSpec& grid) {
  CheckReport r;
  r.axiom = "M";
  r.tolerance = kOrdinalBand;
  r.grid = grid;
  try {
    const auto lambdas = grid.lambdas();
    const auto betas = grid.betas();
    const std::size_t nl = lambdas.size(), nb = betas.size();

    // Cache L on the grid and L at composed speeds.
    std::vector<double> base(nl * nb);
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nb; ++j) base[i * nb + j] = L.eval(lambdas[i], betas[j]);
    }
    std::vector<double> composed(nb * nb);
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) composed[j * nb + k] = op.eval(betas[j], betas[k]);
    }
    std::vector<double> shifted(nl * nb * nb);
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t k = 0; k < nb; ++k) {
          shifted[(i * nb + j) * nb + k] = L.eval(lambdas[i], composed[j * nb + k]);
        }
      }
    }

    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t i2 = 0; i2 < nl; ++i2) {
        for (std::size_t j = 0; j < nb; ++j) {
          for (std::size_t j2 = 0; j2 < nb; ++j2) {
            const double lhs = base[i * nb + j];
            const double rhs = base[i2 * nb + j2];
            const int c1 = band_compare(lhs, rhs, kOrdinalBand);
            if (c1 == 0) continue;
            for (std::size_t k = 0; k < nb; ++k) {
              const double lhs_w = shifted[(i * nb + j) * nb + k];
              const double rhs_w = shifted[(i2 * nb + j2) * nb + k];
              const int c2 = band_compare(lhs_w, rhs_w, kOrdinalBand);
              if (c1 * c2 == -1) {
                const double margin = std::min(rel_diff(lhs, rhs), rel_diff(lhs_w, rhs_w));
                if (margin > r.max_violation) {
                  r.max_violation = margin;
                  r.worst_tuple = {lambdas[i], lambdas[i2], betas[j], betas[j2], betas[k]};
                }
              }
            }
          }
        }
      }
    }
    r.passed = r.worst_tuple.empty();
  } catch (const std::exception& e) {
    return error_report("M", grid, kOrdinalBand, e);
  }
  return r;
}

CheckReport check_LOI(const DopplerLaw& L, const GridSpec& grid,
                      std::span<const double> scales) {
  if (scales.empty()) throw std::invalid_argument("check_LOI: scales must be nonempty");
  for (double a : scales) {
    if (!(a > 0.0)) throw std::invalid_argument("check_LOI: scales must be positive");
  }
  CheckReport r;
  r.axiom = "LOI";
  r.tolerance = kOrdinalBand;
  r.grid = grid;
  try {
    const auto lambdas = grid.lambdas();
    const auto betas = grid.betas();
    const std::size_t nl = lambdas.size(), nb = betas.size();
    std::vector<double> base(nl * nb);
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nb; ++j) base[i * nb + j] = L.eval(lambdas[i], betas[j]);
    }
    std::vector<double> scaled(nl * nb);
    for (double a : scales) {
      for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          scaled[i * nb + j] = L.eval(a * lambdas[i], betas[j]);
        }
      }
      for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          for (std::size_t i2 = 0; i2 < nl; ++i2) {
            for (std::size_t j2 = 0; j2 < nb; ++j2) {
              const int c1 = band_compare(base[i * nb + j], base[i2 * nb + j2], kOrdinalBand);
              const int c2 =
                  band_compare(scaled[i * nb + j], scaled[i2 * nb + j2], kOrdinalBand);
              if (c1 * c2 == -1) {
                const double margin = std::min(rel_diff(base[i * nb + j], base[i2 * nb + j2]),
                                               rel_diff(scaled[i * nb + j], scaled[i2 * nb + j2]));
                if (margin > r.max_violation) {
                  r.max_violation = margin;
                  r.worst_tuple = {a, lambdas[i], betas[j], lambdas[i2], betas[j2]};
                }
              }
            }
          }
        }
      }
    }
    r.passed = r.worst_tuple.empty();
  } catch (const std::exception& e) {
    return error_report("LOI", grid, kOrdinalBand, e);
  }
  return r;
}

CheckReport check_DC(const DopplerLaw& L, const GridSpec& grid) {
  GridSpec capped = grid;
  capped.n_lambda = std::min(capped.n_lambda, 4);
  capped.n_beta = std::min(capped.n_beta, 8);

  CheckReport r;
  r.axiom = "DC";
  r.tolerance = kOrdinalBand;
  r.grid = capped;
  // The consequent band covers the two antecedent dead bands plus rounding.
  const double consequent_band = 3.0 * kOrdinalBand;
  try {
    const auto lambdas = capped.lambdas();
    const auto betas = capped.betas();
    const std::size_t nl = lambdas.size(), nb = betas.size();
    std::vector<double> H(nl * nb);
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j < nb; ++j) H[i * nb + j] = L.eval(lambdas[i], betas[j]);
    }
    auto at = [&](std::size_t i, std::size_t j) { return H[i * nb + j]; };

    for (std::size_t ix = 0; ix < nl; ++ix) {
      for (std::size_t iz = 0; iz < nl; ++iz) {
        for (std::size_t it = 0; it < nl; ++it) {
          for (std::size_t jy = 0; jy < nb; ++jy) {
            for (std::size_t jw = 0; jw < nb; ++jw) {
              if (band_compare(at(ix, jy), at(iz, jw), kOrdinalBand) > 0) continue;
              for (std::size_t js = 0; js < nb; ++js) {
                if (band_compare(at(iz, js), at(it, jy), kOrdinalBand) > 0) continue;
                if (band_compare(at(ix, js), at(it, jw), consequent_band) > 0) {
                  const double margin = rel_diff(at(ix, js), at(it, jw));
                  if (margin > r.max_violation) {
                    r.max_violation = margin;
                    r.worst_tuple = {lambdas[ix], betas[jy], lambdas[iz],
                                     betas[jw],   lambdas[it], betas[js]};
                  }
                }
              }
            }
          }
        }
      }
    }
    r.passed = r.worst_tuple.empty();
  } catch (const std::exception& e) {
    return error_report("DC", capped, kOrdinalBand, e);
  }
  return r;
}

CheckReport check_group_structure(const CompositionLaw& op, const GridSpec& grid, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_group_structure: tol must be positive");
  CheckReport r;
  r.axiom = "group";
  r.tolerance = tol;
  r.grid = grid;
  try {
    const auto betas = grid.betas();
    const std::size_t nb = betas.size();
    std::vector<double> table(nb * nb);
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) table[j * nb + k] = op.eval(betas[j], betas[k]);
    }

    auto record = [&](double violation, const char* what, std::vector<double> tuple) {
      if (violation > r.max_violation) {
        r.max_violation = violation;
        r.worst_tuple = std::move(tuple);
        r.detail = what;
      }
    };

    // Closure: results stay in [0, 1).
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        const double v = table[j * nb + k];
        if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
          record(std::numeric_limits<double>::infinity(), "closure", {betas[j], betas[k]});
        }
      }
    }
    // Identity element 0 on both sides.
    for (std::size_t j = 0; j < nb; ++j) {
      const double left = std::abs(op.eval(0.0, betas[j]) - betas[j]);
      const double right = std::abs(op.eval(betas[j], 0.0) - betas[j]);
      if (left > tol) record(left, "identity", {0.0, betas[j]});
      if (right > tol) record(right, "identity", {betas[j], 0.0});
    }
    // Strict monotonicity in each slot. Violations are recorded above 2 tol
    // so a failed report never sits inside the tolerance.
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        if (band_compare(table[(j + 1) * nb + k], table[j * nb + k], kOrdinalBand) <= 0) {
          record(rel_diff(table[(j + 1) * nb + k], table[j * nb + k]) + 2.0 * tol,
                 "monotonicity", {betas[j], betas[j + 1], betas[k]});
        }
        if (band_compare(table[k * nb + j + 1], table[k * nb + j], kOrdinalBand) <= 0) {
          record(rel_diff(table[k * nb + j + 1], table[k * nb + j]) + 2.0 * tol,
                 "monotonicity", {betas[k], betas[j], betas[j + 1]});
        }
      }
    }
    // Commutativity.
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = j + 1; k < nb; ++k) {
        const double dev = std::abs(table[j * nb + k] - table[k * nb + j]);
        if (dev > tol) record(dev, "commutativity", {betas[j], betas[k]});
      }
    }
    // Associativity.
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t m = 0; m < nb; ++m) {
          const double lhs = op.eval(table[j * nb + k], betas[m]);
          const double rhs = op.eval(betas[j], table[k * nb + m]);
          const double dev = std::abs(lhs - rhs);
          if (dev > tol) record(dev, "associativity", {betas[j], betas[k], betas[m]});
        }
      }
    }
    r.passed = r.worst_tuple.empty();
  } catch (const std::exception& e) {
    return error_report("group", grid, tol, e);
  }
  return r;
}

std::pair<double, double> witness_lf_vs_dstar(double x1, double x2) {
  auto solve = [](double x) {
    if (!(x > 0.0 && x < 1.0)) {
      throw std::domain_error("witness_lf_vs_dstar: arguments must lie in (0, 1)");
    }
    // xi = ln sqrt(1 - x^2) / ln((1 - x)/(1 + x))
    return 0.5 * std::log1p(-x * x) / (std::log1p(-x) - std::log1p(x));
  };
  return {solve(x1), solve(x2)};
}

}  // namespace relkin
