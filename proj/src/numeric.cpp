#include "fdt/numeric.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fdt/errors.hpp"

namespace fdt {

namespace {

void require_stencil(std::size_t n) {
  if (n < 5) throw Error(ErrorCode::grid, "finite differences need at least 5 points, got " + std::to_string(n));
}

double checked(double v, double x, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " is not finite at x = " << x << " (pole on grid?)";
    throw LocatedError(ErrorCode::grid, msg.str(), x);
  }
  return v;
}

}  // namespace

std::vector<double> fd_first(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  require_stencil(n);
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[1] = (f[2] - f[0]) / (2.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> fd_second(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  require_stencil(n);
  const double h2 = h * h;
  std::vector<double> d(n);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[1] = (f[0] - 2.0 * f[1] + f[2]) / h2;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2);
  d[n - 2] = (f[n - 3] - 2.0 * f[n - 2] + f[n - 1]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  return d;
}

GridFn fd_derivative(const GridFn& f, int order) {
  if (order != 1 && order != 2) throw Error(ErrorCode::grid, "fd_derivative supports order 1 or 2");
  const auto& v = f.values();
  return GridFn(f.grid(), order == 1 ? fd_first(v, f.grid().h()) : fd_second(v, f.grid().h()));
}

GridFn rk4_ivp(const ScalarFn& q, const ScalarFn& r, double x0, double w0, double w0p, const Grid& grid) {
  const double h = grid.h();
  const double pos = (x0 - grid.a()) / h;
  const long idx = std::lround(pos);
  if (idx < 0 || idx >= static_cast<long>(grid.size()) || std::abs(pos - static_cast<double>(idx)) > 1e-8)
    throw Error(ErrorCode::grid, "initial point is not a grid node");
  const std::size_t i0 = static_cast<std::size_t>(idx);

  std::vector<double> w(grid.size()), wp(grid.size());
  w[i0] = w0;
  wp[i0] = w0p;

  // y = (w, w'), y' = (w', -q w' - r w)
  auto rhs = [&](double x, const std::array<double, 2>& y) {
    double qv = checked(q(x), x, "q");
    double rv = checked(r(x), x, "r");
    return std::array<double, 2>{y[1], -qv * y[1] - rv * y[0]};
  };
  auto step = [&](double x, std::array<double, 2> y, double s) {
    auto k1 = rhs(x, y);
    auto k2 = rhs(x + 0.5 * s, {y[0] + 0.5 * s * k1[0], y[1] + 0.5 * s * k1[1]});
    auto k3 = rhs(x + 0.5 * s, {y[0] + 0.5 * s * k2[0], y[1] + 0.5 * s * k2[1]});
    auto k4 = rhs(x + s, {y[0] + s * k3[0], y[1] + s * k3[1]});
    for (int c = 0; c < 2; ++c) y[c] += s / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    return y;
  };

  std::array<double, 2> y{w0, w0p};
  for (std::size_t i = i0; i + 1 < grid.size(); ++i) {
    y = step(grid.x(i), y, h);
    w[i + 1] = y[0];
    wp[i + 1] = y[1];
  }
  y = {w0, w0p};
  for (std::size_t i = i0; i > 0; --i) {
    y = step(grid.x(i), y, -h);
    w[i - 1] = y[0];
    wp[i - 1] = y[1];
  }
  return GridFn(grid, std::move(w), {std::move(wp)});
}

GridField heat_crank_nicolson(const GridFn& initial, std::span<const double> left, std::span<const double> right,
                              const Grid& tgrid, double nu) {
  const Grid& xgrid = initial.grid();
  const std::size_t nx = xgrid.size();
  const std::size_t nt = tgrid.size();
  if (left.size() != nt || right.size() != nt)
    throw Error(ErrorCode::grid, "boundary data length does not match the time grid");
  if (!(nu > 0.0)) throw Error(ErrorCode::grid, "diffusivity must be positive");

  const double s = nu * tgrid.h() / (2.0 * xgrid.h() * xgrid.h());
  const std::size_t m = nx - 2;

  std::vector<double> field(nx * nt);
  std::copy(initial.values().begin(), initial.values().end(), field.begin());
  field[0] = left[0];
  field[nx - 1] = right[0];

  std::vector<double> rhs(m), cprime(m), dprime(m);
  for (std::size_t j = 1; j < nt; ++j) {
    const double* prev = field.data() + (j - 1) * nx;
    double* next = field.data() + j * nx;
    next[0] = left[j];
    next[nx - 1] = right[j];
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t i = k + 1;
      rhs[k] = s * prev[i - 1] + (1.0 - 2.0 * s) * prev[i] + s * prev[i + 1];
    }
    rhs[0] += s * next[0];
    rhs[m - 1] += s * next[nx - 1];

    // Thomas algorithm for the constant tridiagonal (-s, 1 + 2s, -s).
    const double diag = 1.0 + 2.0 * s;
    const double off = -s;
    cprime[0] = off / diag;
    dprime[0] = rhs[0] / diag;
    for (std::size_t k = 1; k < m; ++k) {
      double denom = diag - off * cprime[k - 1];
      cprime[k] = off / denom;
      dprime[k] = (rhs[k] - off * dprime[k - 1]) / denom;
    }
    next[m] = dprime[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) next[k + 1] = dprime[k] - cprime[k] * next[k + 2];
  }
  return GridField(xgrid, tgrid, std::move(field));
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 4) throw Error(ErrorCode::grid, "cumulative quadrature needs at least 4 points");
  std::vector<double> I(n, 0.0);
  // Odd nodes start from a cubic rule on [x0, x1] and continue with Simpson from x1,
  // so both parities carry the same smooth O(h^4) error.
  I[1] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  for (std::size_t i = 2; i < n; ++i) I[i] = I[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  return I;
}

ResidualNorms interior_norms(std::span<const double> residual, double h, double scale, std::size_t margin) {
  ResidualNorms out;
  double sum = 0.0;
  for (std::size_t i = margin; i + margin < residual.size(); ++i) {
    out.linf = std::max(out.linf, std::abs(residual[i]));
    sum += residual[i] * residual[i];
  }
  out.linf /= scale;
  out.l2 = std::sqrt(h * sum) / scale;
  return out;
}

ResidualNorms ode_residual(const ScalarFn& q, const ScalarFn& r, const GridFn& f) {
  const auto d1 = f.derivative(1);
  const auto d2 = f.derivative(2);
  const auto& v = f.values();
  std::vector<double> res(v.size(), 0.0);
  for (std::size_t i = 2; i + 2 < v.size(); ++i) {
    double x = f.grid().x(i);
    res[i] = d2[i] + checked(q(x), x, "q") * d1[i] + checked(r(x), x, "r") * v[i];
  }
  return interior_norms(res, f.grid().h(), 1.0 + f.sup_norm(), 2);
}

std::vector<double> observed_orders(std::span<const double> h, std::span<const double> err) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < h.size() && k + 1 < err.size(); ++k)
    out.push_back(std::log(err[k] / err[k + 1]) / std::log(h[k] / h[k + 1]));
  return out;
}

PDEResidualReport pde_residual(const std::vector<GridField>& levels, const PdeOperator& op) {
  if (levels.empty()) throw Error(ErrorCode::grid, "no refinement levels supplied");
  PDEResidualReport report;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const GridField& f = levels[k];
    if (k > 0) {
      const GridField& g = levels[k - 1];
      auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); };
      if (!same(f.xgrid().a(), g.xgrid().a()) || !same(f.xgrid().b(), g.xgrid().b()) ||
          !same(f.tgrid().a(), g.tgrid().a()) || !same(f.tgrid().b(), g.tgrid().b()))
        throw Error(ErrorCode::grid, "refinement levels cover different domains");
      if (!(f.xgrid().h() < g.xgrid().h()) || f.tgrid().h() > g.tgrid().h())
        throw Error(ErrorCode::grid, "refinement levels are not successively finer");
    }
    const std::size_t nx = f.xgrid().size();
    const std::size_t nt = f.tgrid().size();
    if (nx < 3 || nt < 3) throw Error(ErrorCode::grid, "no interior points");
    const double dx = f.xgrid().h();
    const double dt = f.tgrid().h();
    double linf = 0.0, sum = 0.0;
    for (std::size_t j = 1; j + 1 < nt; ++j)
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        PointStencil s;
        s.x = f.xgrid().x(i);
        s.t = f.tgrid().x(j);
        s.u = f(i, j);
        s.u_t = (f(i, j + 1) - f(i, j - 1)) / (2.0 * dt);
        s.u_x = (f(i + 1, j) - f(i - 1, j)) / (2.0 * dx);
        s.u_xx = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (dx * dx);
        double r = op(s);
        linf = std::max(linf, std::abs(r));
        sum += r * r;
      }
    const double scale = 1.0 + f.sup_norm();
    report.levels.push_back({dx, dt, linf / scale, std::sqrt(dx * dt * sum) / scale});
  }
  if (report.levels.size() >= 2) {
    std::vector<double> hs, es;
    for (const auto& l : report.levels) {
      hs.push_back(l.dx);
      es.push_back(l.linf);
    }
    report.orders = observed_orders(hs, es);
    report.order = report.orders.back();
  }
  return report;
}

// ---- CSV ----------------------------------------------------------------

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> read_rows(const std::string& path, std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::io, "empty CSV file '" + path + "'");
  header.clear();
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.pop_back();
      header.push_back(cell);
    }
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::io, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != header.size())
      throw Error(ErrorCode::io, path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(header.size()) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid uniform_grid_from(const std::vector<double>& xs) {
  if (xs.size() < 5) throw Error(ErrorCode::grid, "CSV grid needs at least 5 points");
  Grid g(xs.front(), xs.back(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - g.x(i)) > 1e-9 * (1.0 + std::abs(g.h()) + std::abs(xs[i])))
      throw Error(ErrorCode::grid, "CSV abscissae are not uniformly spaced");
  return g;
}

}  // namespace

void write_gridfn_csv(const std::string& path, const GridFn& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  const bool with_d = f.has_analytic(1);
  out << (with_d ? "x,value,derivative\n" : "x,value\n");
  const auto d = with_d ? f.derivative(1) : std::vector<double>{};
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << fmt17(f.grid().x(i)) << ',' << fmt17(f[i]);
    if (with_d) out << ',' << fmt17(d[i]);
    out << '\n';
  }
}

GridFn read_gridfn_csv(const std::string& path) {
  std::vector<std::string> header;
  auto rows = read_rows(path, header);
  if (header.size() < 2 || header.size() > 3 || header[0] != "x" || header[1] != "value" ||
      (header.size() == 3 && header[2] != "derivative"))
    throw Error(ErrorCode::io, "expected header x,value[,derivative] in '" + path + "'");
  std::vector<double> xs, v, d;
  for (const auto& row : rows) {
    xs.push_back(row[0]);
    v.push_back(row[1]);
    if (row.size() == 3) d.push_back(row[2]);
  }
  Grid g = uniform_grid_from(xs);
  std::vector<std::vector<double>> analytic;
  if (!d.empty()) analytic.push_back(std::move(d));
  return GridFn(g, std::move(v), std::move(analytic));
}

void write_gridfield_csv(const std::string& path, const GridField& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  out << "x,t,value\n";
  for (std::size_t j = 0; j < f.tgrid().size(); ++j)
    for (std::size_t i = 0; i < f.xgrid().size(); ++i)
      out << fmt17(f.xgrid().x(i)) << ',' << fmt17(f.tgrid().x(j)) << ',' << fmt17(f(i, j)) << '\n';
}

GridField read_gridfield_csv(const std::string& path) {
  std::vector<std::string> header;
  auto rows = read_rows(path, header);
  if (header != std::vector<std::string>{"x", "t", "value"})
    throw Error(ErrorCode::io, "expected header x,t,value in '" + path + "'");
  if (rows.empty()) throw Error(ErrorCode::io, "no data rows in '" + path + "'");
  std::vector<double> xs;
  const double t0 = rows.front()[1];
  for (const auto& row : rows) {
    if (row[1] != t0) break;
    xs.push_back(row[0]);
  }
  const std::size_t nx = xs.size();
  if (rows.size() % nx != 0) throw Error(ErrorCode::grid, "field rows are not a full x-by-t block");
  const std::size_t nt = rows.size() / nx;
  std::vector<double> ts, v;
  for (std::size_t j = 0; j < nt; ++j) ts.push_back(rows[j * nx][1]);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::abs(rows[k][0] - xs[k % nx]) > 1e-12 * (1.0 + std::abs(xs[k % nx])) || rows[k][1] != ts[k / nx])
      throw Error(ErrorCode::grid, "field rows are not ordered by t then x");
    v.push_back(rows[k][2]);
  }
  return GridField(uniform_grid_from(xs), uniform_grid_from(ts), std::move(v));
}

}  // namespace fdt
