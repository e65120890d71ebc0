#include "relkin/monotone_map.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "relkin/types.hpp"

namespace relkin {

struct MonotoneMap::Impl {
  std::optional<MonotoneCubic> table;
  std::function<double(double)> forward;
  std::function<double(double)> inverse_fn;
  std::string name;
};

MonotoneMap MonotoneMap::from_knots(std::vector<double> x, std::vector<double> y,
                                    Interp interp) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("MonotoneMap: empty knot set");
  }
  if (x.front() != 0.0 || y.front() != 0.0) {
    throw std::invalid_argument("MonotoneMap: first knot must be (0, 0)");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("MonotoneMap: x knots must lie in [0, 1)");
  }
  for (double v : y) {
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("MonotoneMap: y knots must lie in [0, 1)");
  }
  auto impl = std::make_shared<Impl>();
  impl->table.emplace(std::move(x), std::move(y), interp);
  if (!impl->table->increasing()) {
    throw std::invalid_argument("MonotoneMap: y knots must be strictly increasing");
  }
  impl->name = "tabulated";
  return MonotoneMap(std::move(impl));
}

MonotoneMap MonotoneMap::analytic(std::function<double(double)> forward,
                                  std::function<double(double)> inverse_fn,
                                  std::string name) {
  if (!forward) throw std::invalid_argument("MonotoneMap: forward callable required");
  auto impl = std::make_shared<Impl>();
  impl->forward = std::move(forward);
  impl->inverse_fn = std::move(inverse_fn);
  impl->name = std::move(name);
  return MonotoneMap(std::move(impl));
}

MonotoneMap MonotoneMap::identity() {
  return analytic([](double b) { return b; }, [](double t) { return t; }, "identity");
}

MonotoneMap MonotoneMap::lf_bridge() {
  return analytic(
      [](double b) { return b * b / (2.0 - b * b); },
      [](double t) { return std::sqrt(2.0 * t / (1.0 + t)); },
      "u_lf");
}

double MonotoneMap::operator()(double beta) const {
  if (impl_->table) return (*impl_->table)(beta);
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::domain_error("MonotoneMap: beta outside [0, 1)");
  }
  return std::min(impl_->forward(beta), kBetaSupremum);
}

double MonotoneMap::inverse(double t) const {
  if (impl_->table) return impl_->table->inverse(t);
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::domain_error("MonotoneMap::inverse: value outside [0, 1)");
  }
  if (impl_->inverse_fn) return std::min(impl_->inverse_fn(t), kBetaSupremum);
  double lo = 0.0, hi = kBetaSupremum;
  if (impl_->forward(hi) < t) {
    throw std::domain_error("MonotoneMap::inverse: value not bracketed below 1");
  }
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (impl_->forward(mid) <= t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool MonotoneMap::is_tabulated() const noexcept { return impl_->table.has_value(); }

double MonotoneMap::hull_max() const noexcept {
  return impl_->table ? impl_->table->x_max() : kBetaSupremum;
}

double MonotoneMap::value_max() const noexcept {
  return impl_->table ? impl_->table->y_at_x_max() : kBetaSupremum;
}

const std::string& MonotoneMap::name() const noexcept { return impl_->name; }

std::vector<std::pair<double, double>> MonotoneMap::knots(std::size_t n) const {
  std::vector<std::pair<double, double>> out;
  if (impl_->table) {
    const auto xs = impl_->table->xs();
    const auto ys = impl_->table->ys();
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) out.emplace_back(xs[k], ys[k]);
    return out;
  }
  if (n < 2) n = 2;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double b = 0.999 * static_cast<double>(k) / static_cast<double>(n - 1);
    out.emplace_back(b, (*this)(b));
  }
  return out;
}

}  // namespace relkin
