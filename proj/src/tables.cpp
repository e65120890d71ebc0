#include "relkin/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>

#include "relkin/interp.hpp"

namespace relkin {

namespace {

void write_row(std::ostream& out, double a, double b, double c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a, b, c);
  out << buf;
}

std::vector<double> parse_row(const std::string& line, std::size_t n_cols, std::size_t lineno) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string cell = line.substr(start, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - start);
    out.push_back(detail::parse_double(cell, ("CSV line " + std::to_string(lineno)).c_str()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != n_cols) {
    throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected " +
                                std::to_string(n_cols) + " columns, got " +
                                std::to_string(out.size()));
  }
  return out;
}

std::string read_header(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("CSV: empty input");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return header;
}

// Gather scattered (a, b) -> value rows into a complete rectangular grid.
struct GridAccum {
  std::map<double, std::size_t> a_index, b_index;
  std::map<std::pair<std::size_t, std::size_t>, double> cells;

  void add(double a, double b, double v, std::size_t lineno) {
    const std::size_t ia = a_index.emplace(a, a_index.size()).first->second;
    const std::size_t ib = b_index.emplace(b, b_index.size()).first->second;
    if (!cells.emplace(std::make_pair(ia, ib), v).second) {
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": duplicate grid cell");
    }
  }

  void finalize(std::vector<double>& as, std::vector<double>& bs, std::vector<double>& vals) {
    if (a_index.size() < 2 || b_index.size() < 2) {
      throw std::invalid_argument("CSV: need at least a 2 x 2 grid");
    }
    if (cells.size() != a_index.size() * b_index.size()) {
      throw std::invalid_argument("CSV: incomplete rectangular grid (" +
                                  std::to_string(cells.size()) + " cells for " +
                                  std::to_string(a_index.size()) + " x " +
                                  std::to_string(b_index.size()) + ")");
    }
    as.reserve(a_index.size());
    bs.reserve(b_index.size());
    std::vector<std::size_t> a_rank(a_index.size()), b_rank(b_index.size());
    std::size_t r = 0;
    for (const auto& [a, idx] : a_index) {
      as.push_back(a);
      a_rank[idx] = r++;
    }
    r = 0;
    for (const auto& [b, idx] : b_index) {
      bs.push_back(b);
      b_rank[idx] = r++;
    }
    vals.assign(as.size() * bs.size(), 0.0);
    for (const auto& [key, v] : cells) {
      vals[a_rank[key.first] * bs.size() + b_rank[key.second]] = v;
    }
  }
};

template <typename Table>
Table read_grid_table(std::istream& in, const char* expected_header,
                      std::vector<double> Table::* as, std::vector<double> Table::* bs) {
  const std::string header = read_header(in);
  if (header != expected_header) {
    throw std::invalid_argument("CSV: expected header '" + std::string(expected_header) +
                                "', got '" + header + "'");
  }
  GridAccum accum;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto row = parse_row(line, 3, lineno);
    accum.add(row[0], row[1], row[2], lineno);
  }
  Table table;
  accum.finalize(table.*as, table.*bs, table.values);
  return table;
}

template <typename T>
T read_table_file(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  return reader(in);
}

// Rows of 1-D interpolants over the inner axis, joined across the outer axis
// by a local monotone cubic through up to `window` row sections.
class RowField {
 public:
  RowField(std::vector<double> outer, std::vector<double> inner, const std::vector<double>& vals)
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    rows_.reserve(outer_.size());
    for (std::size_t i = 0; i < outer_.size(); ++i) {
      std::vector<double> y(vals.begin() + static_cast<std::ptrdiff_t>(i * inner_.size()),
                            vals.begin() + static_cast<std::ptrdiff_t>((i + 1) * inner_.size()));
      rows_.emplace_back(inner_, std::move(y));
    }
  }

  [[nodiscard]] double eval(double a, double b) const {
    const double slack = 1e-12 * (outer_.back() - outer_.front());
    if (a < outer_.front() - slack || a > outer_.back() + slack) {
      throw std::domain_error("sampled law: first argument " + std::to_string(a) +
                              " outside sampled hull");
    }
    if (outer_.size() <= kWindow) {
      return cross_section(0, outer_.size(), a, b);
    }
    auto it = std::upper_bound(outer_.begin(), outer_.end(), a);
    std::size_t hi = static_cast<std::size_t>(it - outer_.begin());
    std::size_t lo = hi > kWindow / 2 ? hi - kWindow / 2 : 0;
    if (lo + kWindow > outer_.size()) lo = outer_.size() - kWindow;
    return cross_section(lo, lo + kWindow, a, b);
  }

 private:
  static constexpr std::size_t kWindow = 6;

  [[nodiscard]] double cross_section(std::size_t lo, std::size_t hi, double a, double b) const {
    std::vector<double> xs(outer_.begin() + static_cast<std::ptrdiff_t>(lo),
                           outer_.begin() + static_cast<std::ptrdiff_t>(hi));
    std::vector<double> ys;
    ys.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) ys.push_back(rows_[i](b));
    return MonotoneCubic(std::move(xs), std::move(ys))(a);
  }

  std::vector<double> outer_, inner_;
  std::vector<MonotoneCubic> rows_;
};

}  // namespace

DopplerTable tabulate_doppler(const DopplerLaw& law, const std::vector<double>& lambdas,
                              const std::vector<double>& betas) {
  DopplerTable t;
  t.lambdas = lambdas;
  t.betas = betas;
  t.values.reserve(lambdas.size() * betas.size());
  for (double lam : lambdas) {
    for (double b : betas) t.values.push_back(law.eval(lam, b));
  }
  return t;
}

CompositionTable tabulate_composition(const CompositionLaw& law, const std::vector<double>& vs,
                                      const std::vector<double>& ws) {
  CompositionTable t;
  t.vs = vs;
  t.ws = ws;
  t.values.reserve(vs.size() * ws.size());
  for (double v : vs) {
    for (double w : ws) t.values.push_back(law.eval(v, w));
  }
  return t;
}

void write_doppler_table(std::ostream& out, const DopplerTable& table) {
  out << "lambda,beta,L\n";
  for (std::size_t i = 0; i < table.lambdas.size(); ++i) {
    for (std::size_t j = 0; j < table.betas.size(); ++j) {
      write_row(out, table.lambdas[i], table.betas[j], table.at(i, j));
    }
  }
}

void write_composition_table(std::ostream& out, const CompositionTable& table) {
  out << "v,w,result\n";
  for (std::size_t i = 0; i < table.vs.size(); ++i) {
    for (std::size_t j = 0; j < table.ws.size(); ++j) {
      write_row(out, table.vs[i], table.ws[j], table.at(i, j));
    }
  }
}

void write_knot_table(std::ostream& out, const KnotTable& table) {
  out << "x,y\n";
  char buf[64];
  for (std::size_t k = 0; k < table.x.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.x[k], table.y[k]);
    out << buf;
  }
}

DopplerTable read_doppler_table(std::istream& in) {
  return read_grid_table<DopplerTable>(in, "lambda,beta,L", &DopplerTable::lambdas,
                                       &DopplerTable::betas);
}

CompositionTable read_composition_table(std::istream& in) {
  return read_grid_table<CompositionTable>(in, "v,w,result", &CompositionTable::vs,
                                           &CompositionTable::ws);
}

KnotTable read_knot_table(std::istream& in) {
  const std::string header = read_header(in);
  if (header != "x,y") {
    throw std::invalid_argument("CSV: expected header 'x,y', got '" + header + "'");
  }
  KnotTable t;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto row = parse_row(line, 2, lineno);
    t.x.push_back(row[0]);
    t.y.push_back(row[1]);
  }
  return t;
}

DopplerTable read_doppler_table_file(const std::string& path) {
  return read_table_file(path, read_doppler_table);
}
CompositionTable read_composition_table_file(const std::string& path) {
  return read_table_file(path, read_composition_table);
}
KnotTable read_knot_table_file(const std::string& path) {
  return read_table_file(path, read_knot_table);
}

DopplerLaw make_sampled_doppler(DopplerTable table, std::string tag) {
  auto field = std::make_shared<RowField>(std::move(table.lambdas), std::move(table.betas),
                                          table.values);
  return {[field](double lam, double b) { return field->eval(lam, b); }, std::move(tag)};
}

CompositionLaw make_sampled_composition(CompositionTable table, std::string tag) {
  auto field = std::make_shared<RowField>(std::move(table.vs), std::move(table.ws),
                                          table.values);
  return {[field](double v, double w) { return field->eval(v, w); }, std::move(tag)};
}

}  // namespace relkin
