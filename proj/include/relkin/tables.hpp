#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relkin/kinematics.hpp"

namespace relkin {

/// Rectangular tabulation of a Doppler-type law. CSV shape:
/// header `lambda,beta,L`, rows in row-major grid order (lambda outer),
/// 17 significant digits.
struct DopplerTable {
  std::vector<double> lambdas;  // strictly increasing
  std::vector<double> betas;    // strictly increasing
  std::vector<double> values;   // values[i * betas.size() + j]

  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    return values[i * betas.size() + j];
  }
};

/// Rectangular tabulation of a composition law. CSV shape:
/// header `v,w,result`, rows in row-major grid order (v outer).
struct CompositionTable {
  std::vector<double> vs;
  std::vector<double> ws;
  std::vector<double> values;  // values[i * ws.size() + j]

  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    return values[i * ws.size() + j];
  }
};

/// Monotone-map knots. CSV shape: header `x,y`.
struct KnotTable {
  std::vector<double> x;
  std::vector<double> y;
};

DopplerTable tabulate_doppler(const DopplerLaw& law, const std::vector<double>& lambdas,
                              const std::vector<double>& betas);
CompositionTable tabulate_composition(const CompositionLaw& law,
                                      const std::vector<double>& vs,
                                      const std::vector<double>& ws);

void write_doppler_table(std::ostream& out, const DopplerTable& table);
void write_composition_table(std::ostream& out, const CompositionTable& table);
void write_knot_table(std::ostream& out, const KnotTable& table);

/// Readers accept rows in any order but require a complete rectangular grid
/// and the exact header. They throw std::invalid_argument on format errors.
DopplerTable read_doppler_table(std::istream& in);
CompositionTable read_composition_table(std::istream& in);
KnotTable read_knot_table(std::istream& in);

DopplerTable read_doppler_table_file(const std::string& path);
CompositionTable read_composition_table_file(const std::string& path);
KnotTable read_knot_table_file(const std::string& path);

/// Realize black-box laws from tabulations by monotone interpolation:
/// one monotone cubic per grid row, joined across the other axis through a
/// local monotone cubic window. Queries outside the sampled hull throw
/// std::domain_error. The interpolant reproduces the samples exactly.
DopplerLaw make_sampled_doppler(DopplerTable table, std::string tag = "sampled-doppler");
CompositionLaw make_sampled_composition(CompositionTable table,
                                        std::string tag = "sampled-composition");

}  // namespace relkin
