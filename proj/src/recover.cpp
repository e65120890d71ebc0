#include "relkin/recover.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>

#include "relkin/errors.hpp"

namespace relkin {

void FactorSamples::validate() const {
  if (betas.size() != f_values.size() || betas.size() < 2) {
    throw std::invalid_argument("FactorSamples: need matching beta/f lists of length >= 2");
  }
  if (betas.front() != 0.0) {
    throw std::invalid_argument("FactorSamples: betas must start at 0");
  }
  if (std::abs(f_values.front() - 1.0) > 1e-12) {
    throw std::invalid_argument("FactorSamples: f(0) must equal 1 within 1e-12");
  }
  for (std::size_t k = 0; k + 1 < betas.size(); ++k) {
    if (!(betas[k] < betas[k + 1])) {
      throw std::invalid_argument("FactorSamples: betas must be strictly increasing");
    }
    if (!(f_values[k + 1] < f_values[k])) {
      throw std::invalid_argument("FactorSamples: f must be strictly decreasing");
    }
  }
  for (double f : f_values) {
    if (!(f > 0.0 && f <= 1.0 + 1e-12)) {
      throw std::invalid_argument("FactorSamples: f values must lie in (0, 1]");
    }
  }
}

FactorSamples extract_f(const DopplerLaw& L, std::span<const double> betas,
                        std::span<const double> probes) {
  if (betas.size() < 2 || betas.front() != 0.0) {
    throw std::invalid_argument("extract_f: betas must start at 0 and hold >= 2 entries");
  }
  FactorSamples out;
  out.betas.assign(betas.begin(), betas.end());
  out.f_values.reserve(betas.size());
  for (double b : betas) out.f_values.push_back(L.eval(1.0, b));

  for (double probe : probes) {
    if (!(probe > 0.0)) throw std::invalid_argument("extract_f: probes must be positive");
    for (std::size_t k = 0; k < out.betas.size(); ++k) {
      const double expected = probe * out.f_values[k];
      const double actual = L.eval(probe, out.betas[k]);
      const double dev = std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
      out.homogeneity_dev = std::max(out.homogeneity_dev, dev);
    }
  }
  if (out.homogeneity_dev > 1e-6) {
    throw HomogeneityError("extract_f: law is not of the form lambda * f(beta); "
                           "worst probe deviation " + detail::format_full(out.homogeneity_dev));
  }
  out.validate();
  return out;
}

ExponentFit fit_power_exponent(const FactorSamples& samples, double residual_cap) {
  samples.validate();
  double sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < samples.betas.size(); ++k) {
    const double b = samples.betas[k];
    if (b <= 0.0) continue;  // vanishing regressor
    const double f = samples.f_values[k];
    if (!(f > 0.0)) throw FitError("fit_power_exponent: non-positive factor sample");
    const double t = std::log((1.0 - b) / (1.0 + b));
    const double g = std::log(f);
    sxx += t * t;
    sxy += t * g;
    ++used;
  }
  if (used < 2) {
    throw std::invalid_argument("fit_power_exponent: need at least two samples with beta > 0");
  }
  const double xi_hat = sxy / sxx;
  if (!(xi_hat > 0.0)) {
    throw FitError("fit_power_exponent: fitted exponent is not positive");
  }
  ExponentFit fit{Exponent(xi_hat), 0.0};
  for (std::size_t k = 0; k < samples.betas.size(); ++k) {
    const double b = samples.betas[k];
    const double refit = std::pow((1.0 - b) / (1.0 + b), xi_hat);
    const double resid = std::abs(samples.f_values[k] - refit) / refit;
    fit.max_residual = std::max(fit.max_residual, resid);
  }
  if (fit.max_residual > residual_cap) {
    throw FitError("fit_power_exponent: data is not a single power law; residual " +
                   detail::format_full(fit.max_residual) + " exceeds cap " +
                   detail::format_full(residual_cap));
  }
  return fit;
}

double AdditiveRep::operator()(double beta) const {
  if (!interp) throw std::logic_error("AdditiveRep: empty representation");
  return (*interp)(beta);
}

namespace {

// Solve op(h, h) == target by bisection on [0, target].
double solve_half(const CompositionLaw& op, double target) {
  double lo = 0.0, hi = target;
  const double f_lo = op.eval(0.0, 0.0) - target;
  const double f_hi = op.eval(target, target) - target;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw BisectionError("build_additive_rep: halving equation h (+) h = " +
                         detail::format_full(target) + " is not bracketed on [0, target]");
  }
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (op.eval(mid, mid) <= target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AdditiveRep build_additive_rep(const CompositionLaw& op, double unit_point, int depth,
                               double beta_max) {
  if (!(unit_point > 0.0 && unit_point < beta_max && beta_max < 1.0)) {
    throw std::invalid_argument("build_additive_rep: need 0 < unit_point < beta_max < 1");
  }
  if (depth < 4) throw std::invalid_argument("build_additive_rep: depth must be >= 4");

  // Dyadic halves of the unit: halves[j] has phi = 2^-j.
  std::vector<double> halves(static_cast<std::size_t>(depth) + 1);
  halves[0] = unit_point;
  for (int j = 1; j <= depth; ++j) {
    halves[static_cast<std::size_t>(j)] = solve_half(op, halves[static_cast<std::size_t>(j - 1)]);
  }

  // Doubles of the unit: doubles[m] has phi = 2^m, while below beta_max.
  std::vector<double> doubles{unit_point};
  for (;;) {
    const double next = op.eval(doubles.back(), doubles.back());
    if (!(next < beta_max)) break;
    if (next <= doubles.back()) {
      throw MonotonicityError("build_additive_rep: doubling did not increase the speed");
    }
    doubles.push_back(next);
    if (doubles.size() > 60) {
      throw MonotonicityError("build_additive_rep: runaway doubling chain");
    }
  }
  const int n_doubles = static_cast<int>(doubles.size()) - 1;

  // Grid level: tabulate at phi = k 2^-J, subject to a point budget.
  int grid_level = std::min(depth, 15);
  while (grid_level > 6 &&
         std::ldexp(1.0, n_doubles + 1 + grid_level) > 400000.0) {
    --grid_level;
  }

  // Fill the dyadic lattice: point(k) realizes phi = k 2^-J, composed as
  // point(highest power of two in k) (+) point(remainder), so per-point
  // error stays bounded by the sum of its constituent halvings.
  std::vector<double> point{0.0};
  point.reserve(1u << 16);
  auto power_point = [&](int i) -> const double* {
    // phi = 2^{i - J}
    const int m = i - grid_level;
    if (m <= 0) {
      if (-m > depth) return nullptr;
      return &halves[static_cast<std::size_t>(-m)];
    }
    if (m > n_doubles) return nullptr;
    return &doubles[static_cast<std::size_t>(m)];
  };
  for (std::size_t k = 1; k < 2000000; ++k) {
    const int hb = std::bit_width(k) - 1;  // floor(log2 k)
    double beta;
    if ((k & (k - 1)) == 0) {
      const double* p = power_point(hb);
      if (p == nullptr) break;
      beta = *p;
    } else {
      const std::size_t rest = k - (std::size_t{1} << hb);
      const double* p = power_point(hb);
      if (p == nullptr) break;
      beta = op.eval(*p, point[rest]);
    }
    if (!(beta < beta_max)) break;
    point.push_back(beta);
  }
  if (point.size() < 2) {
    throw MonotonicityError("build_additive_rep: no tabulation points below beta_max");
  }

  AdditiveRep rep;
  rep.unit_point = unit_point;
  rep.depth = depth;
  const double step = std::ldexp(1.0, -grid_level);

  // Wide speed gaps appear where the map underlying op is locally flat (the
  // coordinate barely advances there). Refine those intervals with an 8x
  // finer sub-lattice composed from the deeper halves.
  std::array<double, 8> sub{};
  bool can_refine = depth >= grid_level + 3;
  if (can_refine) {
    const double h1 = halves[static_cast<std::size_t>(grid_level) + 1];
    const double h2 = halves[static_cast<std::size_t>(grid_level) + 2];
    const double h3 = halves[static_cast<std::size_t>(grid_level) + 3];
    sub = {0.0, h3, h2, op.eval(h2, h3), h1, op.eval(h1, h3), op.eval(h1, h2),
           op.eval(op.eval(h1, h2), h3)};
  }
  double median_gap = 0.0;
  if (point.size() > 2) {
    std::vector<double> gaps;
    gaps.reserve(point.size() - 1);
    for (std::size_t k = 1; k < point.size(); ++k) gaps.push_back(point[k] - point[k - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2),
                     gaps.end());
    median_gap = gaps[gaps.size() / 2];
  }

  rep.betas.push_back(0.0);
  rep.phi.push_back(0.0);
  for (int j = depth; j > grid_level; --j) {
    rep.betas.push_back(halves[static_cast<std::size_t>(j)]);
    rep.phi.push_back(std::ldexp(1.0, -j));
  }
  for (std::size_t k = 1; k < point.size(); ++k) {
    if (can_refine && k >= 2 && point[k] - point[k - 1] > 4.0 * median_gap) {
      for (int i = 1; i < 8; ++i) {
        const double beta_sub = op.eval(point[k - 1], sub[static_cast<std::size_t>(i)]);
        if (beta_sub <= rep.betas.back() || beta_sub >= point[k]) continue;
        rep.betas.push_back(beta_sub);
        rep.phi.push_back((static_cast<double>(k - 1) + i / 8.0) * step);
      }
    }
    rep.betas.push_back(point[k]);
    rep.phi.push_back(static_cast<double>(k) * step);
  }
  for (std::size_t k = 0; k + 1 < rep.betas.size(); ++k) {
    if (!(rep.betas[k] < rep.betas[k + 1])) {
      throw MonotonicityError("build_additive_rep: tabulated speeds are not strictly "
                              "increasing near beta = " + detail::format_full(rep.betas[k]));
    }
  }
  rep.interp = std::make_shared<const MonotoneCubic>(rep.betas, rep.phi);

  // Measure additivity on 100 deterministic random pairs of tabulated
  // points. Their assigned coordinates are exactly additive on the dyadic
  // lattice and op lands within rounding of another tabulated point, so the
  // residual probes the operation itself rather than interpolation between
  // knots.
  std::mt19937 rng(0x5eed);
  const std::size_t top = point.size() - 1;
  if (top >= 3) {
    std::uniform_int_distribution<std::size_t> pick(1, top - 1);
    for (int measured = 0; measured < 100; ++measured) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i + j > top - 1) continue;
      const double c = op.eval(point[i], point[j]);
      const double resid =
          std::abs((*rep.interp)(c) - static_cast<double>(i + j) * step);
      rep.additivity_residual = std::max(rep.additivity_residual, resid);
    }
  }
  return rep;
}

double fix_gauge(const AdditiveRep& phi, double anchor) {
  if (!(anchor > 0.0 && anchor < phi.beta_top())) {
    throw std::domain_error("fix_gauge: anchor must lie strictly inside phi's range");
  }
  const double pa = phi(anchor);
  if (pa == 0.0) throw std::domain_error("fix_gauge: phi(anchor) is zero");
  return std::atanh(anchor) / pa;
}

MonotoneMap recover_u(const AdditiveRep& phi, double gauge_k) {
  if (!(gauge_k > 0.0)) throw std::invalid_argument("recover_u: gauge_k must be positive");
  std::vector<double> x, y;
  x.reserve(phi.betas.size());
  y.reserve(phi.betas.size());
  for (std::size_t k = 0; k < phi.betas.size(); ++k) {
    const double u = std::min(std::tanh(gauge_k * phi.phi[k]), kBetaSupremum);
    if (!y.empty() && u <= y.back()) break;  // tanh saturated; truncate the tail
    x.push_back(phi.betas[k]);
    y.push_back(u);
  }
  return MonotoneMap::from_knots(std::move(x), std::move(y));
}

nlohmann::json FitReport::to_json(std::size_t max_table) const {
  auto tabulate = [max_table](const std::vector<double>& xs, const std::vector<double>& ys) {
    nlohmann::json rows = nlohmann::json::array();
    const std::size_t n = xs.size();
    const std::size_t stride = n > max_table ? (n + max_table - 1) / max_table : 1;
    for (std::size_t k = 0; k < n; k += stride) rows.push_back({xs[k], ys[k]});
    if (n > 0 && (n - 1) % stride != 0) rows.push_back({xs[n - 1], ys[n - 1]});
    return rows;
  };
  std::vector<double> ux, uy;
  for (const auto& [kx, ky] : u.knots()) {
    ux.push_back(kx);
    uy.push_back(ky);
  }
  nlohmann::json j{{"xi", xi.value()},
                   {"gauge_k", gauge_k},
                   {"unit_point", phi.unit_point},
                   {"anchor", anchor},
                   {"residual_max_L", residual_max_L},
                   {"residual_max_op", residual_max_op},
                   {"phi", tabulate(phi.betas, phi.phi)},
                   {"u", tabulate(ux, uy)}};
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

FitReport recover_representation(const DopplerLaw& L, const CompositionLaw& op,
                                 const RecoverConfig& config) {
  config.grid.validate();

  FitReport report;
  report.anchor = config.anchor;
  report.phi = build_additive_rep(op, config.unit_point, config.depth, config.beta_max);
  if (report.phi.additivity_residual > config.additivity_cap) {
    throw ConsistencyError("recover_representation: additive coordinate residual " +
                           detail::format_full(report.phi.additivity_residual) +
                           " exceeds cap " + detail::format_full(config.additivity_cap) +
                           "; the composition law has no additive representation at this "
                           "accuracy");
  }
  report.gauge_k = fix_gauge(report.phi, config.anchor);
  report.u = recover_u(report.phi, report.gauge_k);

  const double hull = std::min(report.phi.beta_top(), report.u.hull_max());
  std::vector<double> f_betas{0.0};
  for (double b : config.grid.betas()) {
    if (b > 0.0 && b <= hull) f_betas.push_back(b);
  }
  if (f_betas.size() < 3) {
    throw std::invalid_argument("recover_representation: too few grid speeds inside the "
                                "recovered hull");
  }
  const FactorSamples fs = extract_f(L, f_betas, config.homogeneity_probes);

  // Pointwise exponent estimates -ln f / (2 k phi).
  std::vector<double> ratios;
  ratios.reserve(fs.betas.size());
  for (std::size_t k = 0; k < fs.betas.size(); ++k) {
    const double b = fs.betas[k];
    if (b <= 0.0) continue;
    const double p = report.phi(b);
    ratios.push_back(-std::log(fs.f_values[k]) / (2.0 * report.gauge_k * p));
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double xi_hat = (n % 2 == 1) ? sorted[n / 2]
                                     : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double spread = (sorted.back() - sorted.front()) / std::max(std::abs(xi_hat), 1e-300);
  if (spread > config.xi_spread_tol) {
    throw ConsistencyError("recover_representation: pointwise exponent estimates spread " +
                           detail::format_full(spread) + " exceeds " +
                           detail::format_full(config.xi_spread_tol) +
                           "; the two laws do not share one map");
  }
  report.xi = Exponent(xi_hat);

  // Consistency identity f(beta) = exp(-2 xi k phi(beta)).
  double consistency = 0.0;
  for (std::size_t k = 0; k < fs.betas.size(); ++k) {
    const double predicted = std::exp(-2.0 * xi_hat * report.gauge_k * report.phi(fs.betas[k]));
    consistency = std::max(consistency,
                           std::abs(fs.f_values[k] - predicted) / fs.f_values[k]);
  }

  // Rebuild both laws from (u, xi) and record reconstruction residuals.
  const auto lambdas = config.grid.lambdas();
  for (double lam : lambdas) {
    for (double b : f_betas) {
      const double ub = report.u(b);
      const double rebuilt = lam * std::pow((1.0 - ub) / (1.0 + ub), xi_hat);
      const double input = L.eval(lam, b);
      report.residual_max_L = std::max(
          report.residual_max_L, std::abs(rebuilt - input) / std::max(std::abs(input), 1e-300));
    }
  }
  const double u_top = report.u.value_max();
  for (double a : f_betas) {
    for (double b : f_betas) {
      const double ua = report.u(a), ub = report.u(b);
      const double t = 1.0 - (1.0 - ua) * (1.0 - ub) / (1.0 + ua * ub);
      if (!(t <= u_top)) continue;  // composed speed leaves the recovered hull
      const double rebuilt = report.u.inverse(t);
      const double input = op.eval(a, b);
      report.residual_max_op = std::max(
          report.residual_max_op, std::abs(rebuilt - input) / std::max(std::abs(input), 1e-12));
    }
  }

  report.notes = "xi spread " + detail::format_full(spread) + "; consistency residual " +
                 detail::format_full(consistency) + "; additivity residual " +
                 detail::format_full(report.phi.additivity_residual) +
                 "; gauge pinned by u(" + detail::format_full(config.anchor) + ") = " +
                 detail::format_full(config.anchor);
  return report;
}

}  // namespace relkin
