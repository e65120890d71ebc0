#include <cmath>
#include <random>

#include "doctest.h"
#include "relkin/axioms.hpp"
#include "relkin/errors.hpp"
#include "relkin/recover.hpp"
#include "support/generators.hpp"

using namespace relkin;

namespace {

std::vector<double> beta_grid(int n, double beta_max) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(beta_max * k / (n - 1));
  return out;
}

const double kAtanhHalf = std::atanh(0.5);  // = ln(3)/2

}  // namespace

TEST_CASE("extract_f samples the factor and verifies homogeneity") {
  const auto betas = beta_grid(25, 0.99);
  const FactorSamples de = extract_f(doppler_de_law(), betas);
  CHECK(de.f_values.front() == 1.0);
  for (std::size_t k = 0; k < de.betas.size(); ++k) {
    const double b = de.betas[k];
    CHECK(de.f_values[k] ==
          doctest::Approx(std::sqrt((1.0 - b) / (1.0 + b))).epsilon(1e-14));
  }
  CHECK(de.homogeneity_dev <= 1e-10);

  const FactorSamples lf = extract_f(lorentz_fitzgerald_law(), std::vector<double>{0.0, 0.6});
  CHECK(lf.f_values[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("extract_f raises HomogeneityError on additive offsets") {
  const DopplerLaw offset{[](double l, double b) {
                            return l * std::sqrt((1.0 - b) / (1.0 + b)) + 0.01;
                          },
                          "offset"};
  CHECK_THROWS_AS(extract_f(offset, beta_grid(25, 0.99)), HomogeneityError);

  // Offsets at the 1e-3 scale of lambda are still flagged.
  const DopplerLaw small_offset{
      [](double l, double b) { return l * std::sqrt((1.0 - b) / (1.0 + b)) + 1e-3; },
      "small-offset"};
  CHECK_THROWS_AS(extract_f(small_offset, beta_grid(25, 0.99)), HomogeneityError);
}

TEST_CASE("extract_f validates its sampling grid") {
  CHECK_THROWS_AS(extract_f(doppler_de_law(), std::vector<double>{0.1, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(extract_f(doppler_de_law(), std::vector<double>{0.0}),
                  std::invalid_argument);
}

TEST_CASE("fit_power_exponent recovers generating exponents exactly") {
  const auto betas = beta_grid(30, 0.97);

  const auto fit37 = fit_power_exponent(extract_f(doppler_star_law(Exponent(0.37)), betas));
  CHECK(std::abs(fit37.xi.value() - 0.37) <= 1e-9);
  CHECK(fit37.max_residual <= 1e-12);

  const auto fit_de = fit_power_exponent(extract_f(doppler_de_law(), betas));
  CHECK(std::abs(fit_de.xi.value() - 0.5) <= 1e-12);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> xi_dist(0.05, 5.0);
  for (int k = 0; k < 20; ++k) {
    const double xi = xi_dist(rng);
    const auto fit = fit_power_exponent(extract_f(doppler_star_law(Exponent(xi)), betas));
    // Oracle: regenerate the curve from the fitted exponent and compare.
    CHECK(std::abs(fit.xi.value() - xi) <= 1e-9);
    for (double b : betas) {
      const double regen = std::pow((1.0 - b) / (1.0 + b), fit.xi.value());
      const double want = std::pow((1.0 - b) / (1.0 + b), xi);
      CHECK(std::abs(regen - want) / want <= 1e-9);
    }
  }
}

TEST_CASE("fit_power_exponent needs at least two informative samples") {
  FactorSamples tiny;
  tiny.betas = {0.0, 0.5};
  tiny.f_values = {1.0, std::sqrt(1.0 / 3.0)};
  CHECK_THROWS_AS(fit_power_exponent(tiny), std::invalid_argument);
}

TEST_CASE("fit_power_exponent rejects the contraction law") {
  const auto samples = extract_f(lorentz_fitzgerald_law(), beta_grid(25, 0.99));
  CHECK_THROWS_AS(fit_power_exponent(samples), FitError);
  // Witness agreement: no single exponent reconciles the two laws.
  const auto [xi1, xi2] = witness_lf_vs_dstar(0.5, 0.8);
  CHECK(std::abs(xi1 - xi2) > 0.1);
}

TEST_CASE("build_additive_rep matches the closed-form coordinate of av") {
  const AdditiveRep rep = build_additive_rep(velocity_add_av_law(), 0.5, 20, 0.99);
  CHECK(rep.betas.front() == 0.0);
  CHECK(rep.phi.front() == 0.0);
  CHECK(rep.additivity_residual <= 1e-10);
  for (std::size_t k = 0; k + 1 < rep.betas.size(); ++k) {
    CHECK(rep.betas[k] < rep.betas[k + 1]);
  }
  // Oracle: phi(beta) = atanh(beta) / atanh(0.5).
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.betas.size(); ++k) {
    worst = std::max(worst, std::abs(rep.phi[k] - std::atanh(rep.betas[k]) / kAtanhHalf));
  }
  CHECK(worst <= 1e-9);
  // phi(unit) = 1 exactly by construction.
  CHECK(rep(0.5) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("build_additive_rep matches the closed-form coordinate of astar") {
  const AdditiveRep rep = build_additive_rep(velocity_add_perp_law(), 0.5, 20, 0.99);
  CHECK(rep.additivity_residual <= 1e-10);
  // Oracle: phi(beta) = ln(1 - beta^2) / ln(0.75), from the complement
  // identity (1 - (v (+) w)^2) = (1 - v^2)(1 - w^2).
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.betas.size(); ++k) {
    const double b = rep.betas[k];
    worst = std::max(worst, std::abs(rep.phi[k] - std::log1p(-b * b) / std::log(0.75)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("build_additive_rep diagnoses broken operations") {
  // max has identity 0 but halving stalls: tabulated speeds repeat.
  const CompositionLaw max_op{[](double a, double b) { return std::max(a, b); }, "max"};
  CHECK_THROWS_AS(build_additive_rep(max_op, 0.5, 20, 0.99), MonotonicityError);

  // Without the identity element the halving equation cannot bracket.
  const CompositionLaw shifted{[](double a, double b) { return std::min(a + b + 0.1, 0.99); },
                               "shifted"};
  CHECK_THROWS_AS(build_additive_rep(shifted, 0.5, 20, 0.99), BisectionError);

  CHECK_THROWS_AS(build_additive_rep(velocity_add_av_law(), 0.5, 3, 0.99),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_additive_rep(velocity_add_av_law(), 0.99, 20, 0.5),
                  std::invalid_argument);
}

TEST_CASE("fix_gauge pins the map at the anchor") {
  const AdditiveRep rep = build_additive_rep(velocity_add_av_law(), 0.5, 20, 0.99);
  // anchor = unit point: k = atanh(0.5) / 1 = ln(3)/2 = 0.549306...
  CHECK(fix_gauge(rep, 0.5) == doctest::Approx(kAtanhHalf).epsilon(1e-12));
  CHECK(fix_gauge(rep, 0.5) == doctest::Approx(0.549306).epsilon(1e-6));
  // Any anchor fixes the same gauge for this op: k = atanh(a)/phi(a).
  CHECK(fix_gauge(rep, 0.25) == doctest::Approx(kAtanhHalf).epsilon(1e-9));

  const AdditiveRep perp = build_additive_rep(velocity_add_perp_law(), 0.5, 20, 0.99);
  CHECK(fix_gauge(perp, 0.5) == doctest::Approx(kAtanhHalf).epsilon(1e-12));

  CHECK_THROWS_AS(fix_gauge(rep, 0.0), std::domain_error);
  CHECK_THROWS_AS(fix_gauge(rep, 0.9999), std::domain_error);
}

TEST_CASE("recover_u rebuilds the identity from the av coordinate") {
  const AdditiveRep rep = build_additive_rep(velocity_add_av_law(), 0.5, 20, 0.99);
  const MonotoneMap u = recover_u(rep, fix_gauge(rep, 0.5));
  CHECK(u(0.0) == 0.0);
  double worst = 0.0;
  for (double b = 0.0; b < u.hull_max(); b += 0.013) {
    worst = std::max(worst, std::abs(u(b) - b));
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS_AS(recover_u(rep, -1.0), std::invalid_argument);
}

TEST_CASE("recover_u on the astar coordinate reproduces the operation") {
  const AdditiveRep rep = build_additive_rep(velocity_add_perp_law(), 0.5, 20, 0.99);
  const MonotoneMap u = recover_u(rep, fix_gauge(rep, 0.5));
  // Round-trip: the conjugated composition through the recovered map must
  // reproduce the perpendicular law.
  double worst = 0.0;
  for (double a : beta_grid(12, 0.9)) {
    for (double b : beta_grid(12, 0.9)) {
      const double got = velocity_add_general(SpeedFraction(a), SpeedFraction(b), u).value();
      const double want = velocity_add_perp(SpeedFraction(a), SpeedFraction(b)).value();
      worst = std::max(worst, std::abs(got - want));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("recover_representation on (de, av) returns the canonical pair") {
  const FitReport report = recover_representation(doppler_de_law(), velocity_add_av_law());
  CHECK(std::abs(report.xi.value() - 0.5) <= 1e-8);
  CHECK(report.gauge_k == doctest::Approx(kAtanhHalf).epsilon(1e-10));
  CHECK(report.residual_max_L <= 1e-9);
  CHECK(report.residual_max_op <= 1e-9);
  double worst = 0.0;
  for (double b = 0.0; b < report.u.hull_max(); b += 0.007) {
    worst = std::max(worst, std::abs(report.u(b) - b));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("recover_representation is anchor-independent for the canonical pair") {
  RecoverConfig cfg;
  cfg.anchor = 0.25;
  const FitReport report =
      recover_representation(doppler_de_law(), velocity_add_av_law(), cfg);
  // The av coordinate makes every anchor pin the same gauge, so the
  // recovered pair is still the identity map with exponent one half.
  CHECK(std::abs(report.xi.value() - 0.5) <= 1e-8);
  for (double b = 0.0; b < report.u.hull_max(); b += 0.017) {
    CHECK(std::abs(report.u(b) - b) <= 1e-9);
  }
}

TEST_CASE("AdditiveRep evaluation is hull-bounded") {
  const AdditiveRep rep = build_additive_rep(velocity_add_av_law(), 0.5, 8, 0.9);
  CHECK_THROWS_AS(static_cast<void>(rep(0.95)), std::domain_error);
  CHECK(rep(0.0) == 0.0);
}

TEST_CASE("recover_representation on (lf, astar) rebuilds both laws") {
  const FitReport report =
      recover_representation(lorentz_fitzgerald_law(), velocity_add_perp_law());
  CHECK(report.residual_max_L <= 1e-7);
  CHECK(report.residual_max_op <= 1e-7);
  // Under the anchor gauge u(0.5) = 0.5 the exponent lands at
  // -ln(0.75) / (4 atanh(0.5)), not 1/2; the rebuilt laws are what matter.
  CHECK(report.xi.value() ==
        doctest::Approx(-std::log(0.75) / (4.0 * kAtanhHalf)).epsilon(1e-8));
}

TEST_CASE("recover_representation refuses mismatched pairs") {
  // The cascade check already fails for (de, astar).
  const auto r = check_R(doppler_de_law(), velocity_add_perp_law(), GridSpec{}, 1e-9);
  CHECK_FALSE(r.passed);
  CHECK_THROWS_AS(recover_representation(doppler_de_law(), velocity_add_perp_law()),
                  ConsistencyError);
}

TEST_CASE("gauge rescaling leaves the rebuilt laws unchanged") {
  const AdditiveRep rep = build_additive_rep(velocity_add_av_law(), 0.5, 20, 0.99);
  const double k1 = fix_gauge(rep, 0.5);
  const double k2 = 1.7 * k1;
  const MonotoneMap u1 = recover_u(rep, k1);
  const MonotoneMap u2 = recover_u(rep, k2);
  const double xi1 = 0.5;
  const double xi2 = xi1 * k1 / k2;

  double worst_f = 0.0, worst_op = 0.0;
  const double top = std::min(u1.hull_max(), u2.hull_max());
  for (double b = 0.0; b < top; b += 0.011) {
    const double f1 = std::pow((1.0 - u1(b)) / (1.0 + u1(b)), xi1);
    const double f2 = std::pow((1.0 - u2(b)) / (1.0 + u2(b)), xi2);
    worst_f = std::max(worst_f, std::abs(f1 - f2) / f1);
  }
  // Pairs kept small enough that the composed speed stays inside both hulls.
  for (double a = 0.0; a < 0.72; a += 0.07) {
    for (double b = 0.0; b < 0.72; b += 0.07) {
      const double c1 = velocity_add_general(SpeedFraction(a), SpeedFraction(b), u1).value();
      const double c2 = velocity_add_general(SpeedFraction(a), SpeedFraction(b), u2).value();
      worst_op = std::max(worst_op, std::abs(c1 - c2));
    }
  }
  CHECK(worst_f <= 1e-12);
  CHECK(worst_op <= 1e-12);
}

TEST_CASE("recovery round-trips random generator pairs at the law level") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 2; ++trial) {
    const auto pair = testgen::random_pair(rng, /*tabulated=*/true);
    const FitReport report = recover_representation(pair.L, pair.op);
    // Gauge-invariant contract: rebuilt laws match the generators.
    double worst_l = 0.0, worst_op = 0.0;
    const double hull = report.u.hull_max();
    for (double lam : {0.5, 2.0, 8.0}) {
      for (double b = 0.0; b <= 0.99; b += 0.03) {
        if (b > hull) break;
        const double rebuilt =
            lam * std::pow((1.0 - report.u(b)) / (1.0 + report.u(b)), report.xi.value());
        const double want = pair.L.eval(lam, b);
        worst_l = std::max(worst_l, std::abs(rebuilt - want) / want);
      }
    }
    for (double a = 0.0; a <= 0.9; a += 0.06) {
      for (double b = 0.0; b <= 0.9; b += 0.06) {
        const double want = pair.op.eval(a, b);
        if (want > hull) continue;
        const double rebuilt =
            velocity_add_general(SpeedFraction(a), SpeedFraction(b), report.u).value();
        worst_op = std::max(worst_op, std::abs(rebuilt - want));
      }
    }
    CHECK(worst_l <= 1e-6);
    CHECK(worst_op <= 1e-6);
  }
}

TEST_CASE("FitReport serializes the stable JSON shape") {
  const FitReport report = recover_representation(doppler_de_law(), velocity_add_av_law());
  const auto j = report.to_json(512);
  CHECK(j.at("xi").get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(j.at("gauge_k").is_number());
  CHECK(j.at("unit_point") == 0.5);
  CHECK(j.at("anchor") == 0.5);
  CHECK(j.at("residual_max_L").is_number());
  CHECK(j.at("residual_max_op").is_number());
  CHECK(j.at("phi").is_array());
  CHECK(j.at("u").is_array());
  CHECK(j.at("phi").size() <= 513);
  CHECK(j.at("phi").front().at(0) == 0.0);
  CHECK(j.at("phi").front().at(1) == 0.0);
}
