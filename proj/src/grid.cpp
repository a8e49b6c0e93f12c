#include "fdt/grid.hpp"

#include <cmath>
#include <string>

#include "fdt/errors.hpp"
#include "fdt/numeric.hpp"

namespace fdt {

Grid::Grid(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  if (n < 5) throw Error(ErrorCode::grid, "grid needs at least 5 points, got " + std::to_string(n));
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::grid, "grid endpoints must satisfy a < b");
}

double Grid::x(std::size_t i) const {
  if (i + 1 == n_) return b_;
  return a_ + static_cast<double>(i) * h();
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x(i);
  return out;
}

GridFn::GridFn(Grid grid, std::vector<double> values, std::vector<std::vector<double>> analytic)
    : grid_(grid), values_(std::move(values)), analytic_(std::move(analytic)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorCode::grid, "grid function has " + std::to_string(values_.size()) + " values on a " +
                                     std::to_string(grid_.size()) + "-point grid");
  for (const auto& d : analytic_)
    if (d.size() != grid_.size()) throw Error(ErrorCode::grid, "derivative length does not match the grid");
}

GridFn GridFn::sample(const Grid& grid, const ScalarFn& f, const std::vector<ScalarFn>& derivatives) {
  auto xs = grid.nodes();
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f(xs[i]);
  std::vector<std::vector<double>> ds;
  for (const auto& df : derivatives) {
    std::vector<double> d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) d[i] = df(xs[i]);
    ds.push_back(std::move(d));
  }
  return GridFn(grid, std::move(v), std::move(ds));
}

std::vector<double> GridFn::derivative(int k) const {
  if (k <= 0) return values_;
  if (has_analytic(k)) return analytic_[static_cast<std::size_t>(k - 1)];
  int have = std::min(k - 1, analytic_order());
  std::vector<double> base = have == 0 ? values_ : analytic_[static_cast<std::size_t>(have - 1)];
  int remaining = k - have;
  while (remaining >= 2) {
    base = fd_second(base, grid_.h());
    remaining -= 2;
  }
  if (remaining == 1) base = fd_first(base, grid_.h());
  return base;
}

GridFn GridFn::with_derivatives(std::vector<std::vector<double>> analytic) const {
  return GridFn(grid_, values_, std::move(analytic));
}

double GridFn::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridField::GridField(Grid xgrid, Grid tgrid, std::vector<double> values, std::optional<std::vector<double>> dx)
    : xgrid_(xgrid), tgrid_(tgrid), values_(std::move(values)), dx_(std::move(dx)) {
  if (values_.size() != xgrid_.size() * tgrid_.size())
    throw Error(ErrorCode::grid, "field size does not match nx * nt");
  if (dx_ && dx_->size() != values_.size()) throw Error(ErrorCode::grid, "field derivative size mismatch");
}

GridField GridField::sample(const Grid& xgrid, const Grid& tgrid, const std::function<double(double, double)>& f,
                            const std::function<double(double, double)>& fx) {
  std::vector<double> v(xgrid.size() * tgrid.size());
  std::optional<std::vector<double>> d;
  if (fx) d.emplace(v.size());
  for (std::size_t j = 0; j < tgrid.size(); ++j)
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
      v[j * xgrid.size() + i] = f(xgrid.x(i), tgrid.x(j));
      if (d) (*d)[j * xgrid.size() + i] = fx(xgrid.x(i), tgrid.x(j));
    }
  return GridField(xgrid, tgrid, std::move(v), std::move(d));
}

std::vector<double> GridField::dx() const {
  if (dx_) return *dx_;
  const std::size_t nx = xgrid_.size();
  const double h = xgrid_.h();
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < tgrid_.size(); ++j) {
    const double* row = values_.data() + j * nx;
    double* o = out.data() + j * nx;
    o[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < nx; ++i) o[i] = (row[i + 1] - row[i - 1]) / (2.0 * h);
    o[nx - 1] = (3.0 * row[nx - 1] - 4.0 * row[nx - 2] + row[nx - 3]) / (2.0 * h);
  }
  return out;
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace fdt
