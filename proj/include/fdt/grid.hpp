#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fdt {

using ScalarFn = std::function<double(double)>;

/// Uniform grid of n points on [a, b].
class Grid {
 public:
  /// Throws Error(grid) unless n >= 5 and b > a.
  Grid(double a, double b, std::size_t n);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t size() const { return n_; }
  double h() const { return (b_ - a_) / static_cast<double>(n_ - 1); }
  double x(std::size_t i) const;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

/// Sampled function on a Grid. Analytic derivatives may be attached; the k-th one
/// lives at analytic[k - 1]. Missing derivatives are produced by finite differences.
class GridFn {
 public:
  GridFn(Grid grid, std::vector<double> values, std::vector<std::vector<double>> analytic = {});

  static GridFn sample(const Grid& grid, const ScalarFn& f, const std::vector<ScalarFn>& derivatives = {});

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  int analytic_order() const { return static_cast<int>(analytic_.size()); }
  bool has_analytic(int k) const { return k >= 1 && k <= analytic_order(); }

  /// k-th derivative: analytic when attached, otherwise finite differences of the
  /// highest attached derivative below k.
  std::vector<double> derivative(int k) const;

  /// Same values, every analytic derivative dropped.
  GridFn values_only() const { return GridFn(grid_, values_); }
  GridFn with_derivatives(std::vector<std::vector<double>> analytic) const;

  double sup_norm() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<std::vector<double>> analytic_;
};

/// Space-time field sampled on xgrid x tgrid, row-major in t:
/// value(i, j) is at (xgrid.x(i), tgrid.x(j)).
class GridField {
 public:
  GridField(Grid xgrid, Grid tgrid, std::vector<double> values,
            std::optional<std::vector<double>> dx = std::nullopt);

  static GridField sample(const Grid& xgrid, const Grid& tgrid, const std::function<double(double, double)>& f,
                          const std::function<double(double, double)>& fx = nullptr);

  const Grid& xgrid() const { return xgrid_; }
  const Grid& tgrid() const { return tgrid_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[j * xgrid_.size() + i]; }

  bool has_analytic_dx() const { return dx_.has_value(); }
  /// Spatial derivative: analytic when attached, else second-order differences
  /// (central inside, one-sided at the two edges) along x.
  std::vector<double> dx() const;

  double sup_norm() const;

 private:
  Grid xgrid_;
  Grid tgrid_;
  std::vector<double> values_;
  std::optional<std::vector<double>> dx_;
};

}  // namespace fdt
