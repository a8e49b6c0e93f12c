#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdt/grid.hpp"

namespace fdt {

/// Default tolerances shared by the numeric oracles.
struct Tolerances {
  double analytic = 1e-8;          // identities evaluated with analytic derivatives
  double fd_factor = 10.0;         // FD-limited identities: fd_factor * h^2
  double seed_relative = 1e-6;     // seed residual per point, times (1 + sup|seed|)
  double negative_control = 1e-2;  // non-solutions must exceed this

  double fd_limit(double h) const { return fd_factor * h * h; }
};

// ---- finite differences -------------------------------------------------

/// First derivative: 4th-order central for 2 <= i <= n-3, 2nd-order central at
/// i = 1 and n-2, 2nd-order one-sided at the two endpoints.
std::vector<double> fd_first(std::span<const double> f, double h);
/// Second derivative with the same stencil layout as fd_first.
std::vector<double> fd_second(std::span<const double> f, double h);

/// order must be 1 or 2. Throws Error(grid) when the grid has fewer than 5 points.
GridFn fd_derivative(const GridFn& f, int order);

// ---- integrators -------------------------------------------------------

/// Classical RK4 for w'' + q w' + r w = 0 with w(x0) = w0, w'(x0) = w0p.
/// x0 must be a grid node; integration runs outward in both directions.
/// The result carries w' as its first analytic derivative.
GridFn rk4_ivp(const ScalarFn& q, const ScalarFn& r, double x0, double w0, double w0p, const Grid& grid);

/// Crank-Nicolson for phi_t = nu phi_xx with Dirichlet data left[j], right[j]
/// at tgrid.x(j). Tridiagonal systems are solved with the Thomas algorithm.
GridField heat_crank_nicolson(const GridFn& initial, std::span<const double> left, std::span<const double> right,
                              const Grid& tgrid, double nu);

/// Cumulative integral of f from the left endpoint by composite Simpson. Even nodes
/// integrate from x0; odd nodes add Simpson from x1 to a cubic rule on [x0, x1].
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

// ---- residuals ----------------------------------------------------------

struct ResidualNorms {
  double linf = 0.0;
  double l2 = 0.0;
};

/// Interior (2 <= i <= n-3) norms of f'' + q f' + r f, divided by 1 + sup|f|.
/// Uses the analytic derivatives attached to f when present.
ResidualNorms ode_residual(const ScalarFn& q, const ScalarFn& r, const GridFn& f);

/// Same, from precomputed residual samples.
ResidualNorms interior_norms(std::span<const double> residual, double h, double scale, std::size_t margin);

/// Values available to a PDE operator at one interior node; all derivatives are
/// second-order central differences.
struct PointStencil {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double u_t = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
};

using PdeOperator = std::function<double(const PointStencil&)>;

struct ResidualLevel {
  double dx = 0.0;
  double dt = 0.0;
  double linf = 0.0;
  double l2 = 0.0;
};

struct PDEResidualReport {
  std::vector<ResidualLevel> levels;
  /// log2-type orders between consecutive levels; empty with a single level.
  std::vector<double> orders;
  /// Order between the two finest levels.
  std::optional<double> order;
};

/// Interior residual of op over each field, finest last. Throws Error(grid) unless
/// every level shares the domain and strictly refines the previous one.
PDEResidualReport pde_residual(const std::vector<GridField>& levels, const PdeOperator& op);

/// Observed order between successive (h, error) pairs.
std::vector<double> observed_orders(std::span<const double> h, std::span<const double> err);

// ---- CSV ----------------------------------------------------------------

/// Header "x,value[,derivative]".
void write_gridfn_csv(const std::string& path, const GridFn& f);
/// Reads x,value[,derivative]; x must be uniform to round-off.
GridFn read_gridfn_csv(const std::string& path);
/// Header "x,t,value", rows ordered by t then x.
void write_gridfield_csv(const std::string& path, const GridField& f);
GridField read_gridfield_csv(const std::string& path);

}  // namespace fdt
