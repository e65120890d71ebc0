// Command-line front end: evaluate laws, check axioms on grids, fit
// representations from sampled tables, emit tables, print the
// contraction-vs-power-law witness.
//
// Exit codes: 0 success / axiom passed; 1 axiom failure or model violation;
// 2 usage, domain, or I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relkin/axioms.hpp"
#include "relkin/errors.hpp"
#include "relkin/recover.hpp"
#include "relkin/tables.hpp"

namespace {

using namespace relkin;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct LawFlags {
  std::string kind;
  double xi = 0.5;
  bool xi_set = false;
  std::string u_source;
};

MonotoneMap load_u(const std::string& source) {
  if (source == "identity") return MonotoneMap::identity();
  if (source == "u_lf") return MonotoneMap::lf_bridge();
  const KnotTable knots = read_knot_table_file(source);
  return MonotoneMap::from_knots(knots.x, knots.y);
}

bool is_doppler_kind(const std::string& kind) {
  return kind == "de" || kind == "lf" || kind == "dstar" || kind == "dgen";
}

bool is_composition_kind(const std::string& kind) {
  return kind == "av" || kind == "astar" || kind == "agen";
}

DopplerLaw make_doppler(const LawFlags& flags) {
  if (flags.kind == "de") return doppler_de_law();
  if (flags.kind == "lf") return lorentz_fitzgerald_law();
  if (flags.kind == "dstar") {
    if (!flags.xi_set) throw std::invalid_argument("dstar requires --xi");
    return doppler_star_law(Exponent(flags.xi));
  }
  if (flags.kind == "dgen") {
    if (!flags.xi_set) throw std::invalid_argument("dgen requires --xi");
    if (flags.u_source.empty()) throw std::invalid_argument("dgen requires --u");
    return doppler_general_law(load_u(flags.u_source), Exponent(flags.xi));
  }
  throw std::invalid_argument("unknown Doppler law kind '" + flags.kind + "'");
}

CompositionLaw make_composition(const LawFlags& flags) {
  if (flags.kind == "av") return velocity_add_av_law();
  if (flags.kind == "astar") return velocity_add_perp_law();
  if (flags.kind == "agen") {
    if (flags.u_source.empty()) throw std::invalid_argument("agen requires --u");
    return velocity_add_general_law(load_u(flags.u_source));
  }
  throw std::invalid_argument("unknown composition law kind '" + flags.kind + "'");
}

void add_grid_flags(CLI::App* cmd, GridSpec& grid, std::string& spacing) {
  cmd->add_option("--n-lambda", grid.n_lambda, "Wavelength grid size");
  cmd->add_option("--n-beta", grid.n_beta, "Speed grid size");
  cmd->add_option("--beta-max", grid.beta_max, "Largest grid speed fraction");
  cmd->add_option("--lambda-min", grid.lambda_low, "Smallest grid wavelength");
  cmd->add_option("--lambda-max", grid.lambda_high, "Largest grid wavelength");
  cmd->add_option("--spacing", spacing, "Wavelength spacing: geometric|uniform")
      ->check(CLI::IsMember({"geometric", "uniform"}));
}

void apply_spacing(GridSpec& grid, const std::string& spacing) {
  grid.spacing =
      spacing == "uniform" ? GridSpec::Spacing::uniform : GridSpec::Spacing::geometric;
}

void print_value(double v) { std::printf("%.15g\n", v); }

int run_eval(const LawFlags& flags, std::optional<double> lambda, std::optional<double> v,
             std::optional<double> w, double c_scale) {
  auto speed = [&](double physical) { return SpeedFraction(physical / c_scale); };
  if (is_doppler_kind(flags.kind)) {
    if (!lambda || !v) {
      throw std::invalid_argument("Doppler laws need --lambda and --v");
    }
    const DopplerLaw law = make_doppler(flags);
    print_value(law(Wavelength(*lambda), speed(*v)).value());
    return kExitPass;
  }
  if (is_composition_kind(flags.kind)) {
    if (!v || !w) {
      throw std::invalid_argument("composition laws need --v and --w");
    }
    const CompositionLaw law = make_composition(flags);
    print_value(law(speed(*v), speed(*w)).value() * c_scale);
    return kExitPass;
  }
  throw std::invalid_argument("unknown law kind '" + flags.kind + "'");
}

int run_check(const std::string& axiom, const LawFlags& law_flags, const LawFlags& op_flags,
              const GridSpec& grid, double tol, const std::vector<double>& scales) {
  CheckReport report;
  if (axiom == "R") {
    report = check_R(make_doppler(law_flags), make_composition(op_flags), grid, tol);
  } else if (axiom == "M") {
    report = check_M(make_doppler(law_flags), make_composition(op_flags), grid);
  } else if (axiom == "LOI") {
    report = check_LOI(make_doppler(law_flags), grid, scales);
  } else if (axiom == "DC") {
    report = check_DC(make_doppler(law_flags), grid);
  } else if (axiom == "group") {
    report = check_group_structure(make_composition(op_flags), grid, tol);
  } else {
    throw std::invalid_argument("unknown axiom '" + axiom + "' (expected R, M, LOI, DC, group)");
  }
  std::cout << report.to_json().dump(2) << "\n";
  return report.passed ? kExitPass : kExitViolation;
}

void write_json(const nlohmann::json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot open '" + output + "' for writing");
  out << j.dump(2) << "\n";
}

int run_fit_exponent(const std::string& input, double cap, const std::string& output) {
  const DopplerTable table = read_doppler_table_file(input);
  const DopplerLaw law = make_sampled_doppler(table, "sampled:" + input);
  // Sample the factor at the table's own speeds: exact at knots.
  std::vector<double> probes;
  for (double p : kDefaultHomogeneityProbes) {
    probes.push_back(std::clamp(p, table.lambdas.front(), table.lambdas.back()));
  }
  const FactorSamples samples = extract_f(law, table.betas, probes);
  const ExponentFit fit = fit_power_exponent(samples, cap);
  write_json({{"xi", fit.xi.value()}, {"max_residual", fit.max_residual}}, output);
  return kExitPass;
}

int run_fit_full(const std::string& l_input, const std::string& op_input, RecoverConfig cfg,
                 const std::string& output) {
  const DopplerTable l_table = read_doppler_table_file(l_input);
  const CompositionTable op_table = read_composition_table_file(op_input);
  if (!(l_table.lambdas.front() <= 1.0 && 1.0 <= l_table.lambdas.back())) {
    throw std::invalid_argument("Doppler table must span lambda = 1 to factor the law");
  }
  const double hull = std::min({l_table.betas.back(), op_table.vs.back(), op_table.ws.back()});
  cfg.beta_max = std::min(cfg.beta_max, hull);
  cfg.grid.beta_max = std::min(cfg.grid.beta_max, hull);
  cfg.grid.lambda_low = std::max(cfg.grid.lambda_low, l_table.lambdas.front());
  cfg.grid.lambda_high = std::min(cfg.grid.lambda_high, l_table.lambdas.back());
  for (double& p : cfg.homogeneity_probes) {
    p = std::clamp(p, l_table.lambdas.front(), l_table.lambdas.back());
  }
  const DopplerLaw L = make_sampled_doppler(l_table, "sampled:" + l_input);
  const CompositionLaw op = make_sampled_composition(op_table, "sampled:" + op_input);
  const FitReport report = recover_representation(L, op, cfg);
  write_json(report.to_json(), output);
  return kExitPass;
}

int run_witness(double x1, double x2) {
  const auto [xi1, xi2] = witness_lf_vs_dstar(x1, x2);
  std::printf("xi1 = %.15g\nxi2 = %.15g\ndiff = %.15g\n", xi1, xi2, std::abs(xi2 - xi1));
  return std::abs(xi2 - xi1) > 1e-6 ? kExitPass : kExitViolation;
}

int run_table(const LawFlags& flags, const GridSpec& grid, const std::string& output) {
  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot open '" + output + "' for writing");
  if (is_doppler_kind(flags.kind)) {
    write_doppler_table(out, tabulate_doppler(make_doppler(flags), grid.lambdas(), grid.betas()));
  } else if (is_composition_kind(flags.kind)) {
    write_composition_table(
        out, tabulate_composition(make_composition(flags), grid.betas(), grid.betas()));
  } else {
    throw std::invalid_argument("unknown law kind '" + flags.kind + "'");
  }
  if (!out) throw std::invalid_argument("write to '" + output + "' failed");
  return kExitPass;
}

}  // namespace

namespace {

int run_main(int argc, char** argv) {
  CLI::App app{"Relativistic Doppler and velocity-composition toolkit"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a law at one point");
  LawFlags eval_law;
  std::optional<double> eval_lambda, eval_v, eval_w;
  double eval_c = 1.0;
  eval->add_option("kind", eval_law.kind, "de|av|lf|astar|dstar|dgen|agen")->required();
  eval->add_option("--lambda", eval_lambda, "Wavelength (Doppler laws)");
  eval->add_option("--v", eval_v, "First speed");
  eval->add_option("--w", eval_w, "Second speed (composition laws)");
  eval->add_option("--xi", eval_law.xi, "Exponent (dstar, dgen)")
      ->each([&](const std::string&) { eval_law.xi_set = true; });
  eval->add_option("--u", eval_law.u_source, "Map source: identity|u_lf|knots.csv");
  eval->add_option("--c", eval_c, "Speed scale; inputs/outputs are physical speeds over c");

  // check
  auto* check = app.add_subcommand("check", "Check an axiom over a grid");
  std::string check_axiom;
  LawFlags check_law, check_op;
  GridSpec check_grid;
  std::string check_spacing = "geometric";
  double check_tol = 1e-9;
  std::vector<double> check_scales = kDefaultLoiScales;
  check->add_option("axiom", check_axiom, "R|M|LOI|DC|group")->required();
  check->add_option("--law", check_law.kind, "Doppler law kind");
  check->add_option("--xi", check_law.xi, "Exponent for --law dstar|dgen")
      ->each([&](const std::string&) { check_law.xi_set = true; });
  check->add_option("--u", check_law.u_source, "Map source for --law dgen");
  check->add_option("--op", check_op.kind, "Composition law kind");
  check->add_option("--op-u", check_op.u_source, "Map source for --op agen");
  check->add_option("--tol", check_tol, "Tolerance for R and group checks");
  check->add_option("--scales", check_scales, "Similarity scales for LOI")->delimiter(',');
  add_grid_flags(check, check_grid, check_spacing);

  // fit
  auto* fit = app.add_subcommand("fit", "Recover representation parameters from tables");
  std::string fit_kind, fit_input, fit_op_input, fit_output;
  double fit_cap = 1e-6;
  RecoverConfig fit_cfg;
  fit->add_option("kind", fit_kind, "exponent|full")->required();
  fit->add_option("input", fit_input, "Doppler table CSV (lambda,beta,L)")->required();
  fit->add_option("op_input", fit_op_input, "Composition table CSV (v,w,result; kind=full)");
  fit->add_option("--cap", fit_cap, "Residual cap for the exponent fit");
  fit->add_option("--unit", fit_cfg.unit_point, "Unit point of the additive coordinate");
  fit->add_option("--anchor", fit_cfg.anchor, "Gauge anchor: u(anchor) = anchor");
  fit->add_option("--depth", fit_cfg.depth, "Dyadic halving depth");
  fit->add_option("--beta-max", fit_cfg.beta_max, "Top speed for the construction");
  fit->add_option("--additivity-cap", fit_cfg.additivity_cap,
                  "Gate on the measured additivity residual of the composition table");
  fit->add_option("--output", fit_output, "Write the JSON report here instead of stdout");

  // witness
  auto* witness = app.add_subcommand(
      "witness", "Exponents reconciling the contraction law with a power law at two speeds");
  double witness_x1 = 0.5, witness_x2 = 0.8;
  witness->add_option("--x1", witness_x1, "First speed in (0, 1)");
  witness->add_option("--x2", witness_x2, "Second speed in (0, 1)");

  // table
  auto* table = app.add_subcommand("table", "Emit a law tabulation as CSV");
  LawFlags table_law;
  GridSpec table_grid;
  std::string table_spacing = "geometric";
  std::string table_output;
  table->add_option("kind", table_law.kind, "de|av|lf|astar|dstar|dgen|agen")->required();
  table->add_option("output", table_output, "Output CSV path")->required();
  table->add_option("--xi", table_law.xi, "Exponent (dstar, dgen)")
      ->each([&](const std::string&) { table_law.xi_set = true; });
  table->add_option("--u", table_law.u_source, "Map source: identity|u_lf|knots.csv");
  add_grid_flags(table, table_grid, table_spacing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return run_eval(eval_law, eval_lambda, eval_v, eval_w, eval_c);
    if (check->parsed()) {
      apply_spacing(check_grid, check_spacing);
      return run_check(check_axiom, check_law, check_op, check_grid, check_tol, check_scales);
    }
    if (fit->parsed()) {
      if (fit_kind == "exponent") return run_fit_exponent(fit_input, fit_cap, fit_output);
      if (fit_kind == "full") {
        if (fit_op_input.empty()) {
          throw std::invalid_argument("fit full needs both a Doppler and a composition table");
        }
        return run_fit_full(fit_input, fit_op_input, fit_cfg, fit_output);
      }
      throw std::invalid_argument("unknown fit kind '" + fit_kind + "' (expected exponent|full)");
    }
    if (witness->parsed()) return run_witness(witness_x1, witness_x2);
    if (table->parsed()) {
      apply_spacing(table_grid, table_spacing);
      return run_table(table_law, table_grid, table_output);
    }
  } catch (const HomogeneityError& e) {
    std::cerr << "HomogeneityError: " << e.what() << "\n";
    return kExitViolation;
  } catch (const FitError& e) {
    std::cerr << "FitError: " << e.what() << "\n";
    return kExitViolation;
  } catch (const ConsistencyError& e) {
    std::cerr << "ConsistencyError: " << e.what() << "\n";
    return kExitViolation;
  } catch (const BisectionError& e) {
    std::cerr << "BisectionError: " << e.what() << "\n";
    return kExitViolation;
  } catch (const MonotonicityError& e) {
    std::cerr << "MonotonicityError: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  // Keep the exit-code contract total even for setup failures.
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (...) {
    return kExitUsage;
  }
}
