#include "fdt/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdt/errors.hpp"

namespace fdt {

Potential Potential::rational(RationalExpr u) {
  Potential p;
  const RationalExpr du = u.derivative();
  p.u_ = [u](double x) { return u.evaluate(x); };
  p.du_ = [du](double x) { return du.evaluate(x); };
  p.expr_ = std::move(u);
  return p;
}

Potential Potential::black_box(ScalarFn u, ScalarFn du) {
  Potential p;
  p.u_ = std::move(u);
  p.du_ = std::move(du);
  return p;
}

double Potential::derivative(double x) const {
  if (du_) return du_(x);
  const double h = 1e-3 * std::max(1.0, std::abs(x));
  return (u_(x - 2 * h) - 8 * u_(x - h) + 8 * u_(x + h) - u_(x + 2 * h)) / (12 * h);
}

namespace {

std::string at(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

void require_nonvanishing(const GridFn& f, const char* name) {
  if (auto x = find_zero_crossing(f.grid(), f.values()))
    throw LocatedError(ErrorCode::nonvanishing, std::string(name) + " vanishes near x = " + at(*x), *x);
}

// Points where a second derivative is trusted: all of them when analytic,
// the 4th-order interior otherwise.
std::pair<std::size_t, std::size_t> checked_range(const GridFn& f) {
  const std::size_t n = f.size();
  return f.has_analytic(2) ? std::pair<std::size_t, std::size_t>{0, n} : std::pair<std::size_t, std::size_t>{2, n - 2};
}

// Throws code at the first point where f'' - (u + c) f exceeds the seed tolerance.
void require_eigenfunction(const SchrodingerProblem& prob, double c, const GridFn& f, const Tolerances& tol,
                           ErrorCode code, const char* name) {
  const auto d2 = f.derivative(2);
  const double limit = tol.seed_relative * (1.0 + f.sup_norm());
  const auto [lo, hi] = checked_range(f);
  for (std::size_t i = lo; i < hi; ++i) {
    const double x = f.grid().x(i);
    const double res = d2[i] - (prob.u(x) + c) * f[i];
    if (!(std::abs(res) <= limit)) {
      std::ostringstream s;
      s << name << " residual " << res << " at x = " << at(x) << " exceeds " << limit;
      throw LocatedError(code, s.str(), x);
    }
  }
}

// -z'/z with derivative z'^2/z^2 - z''/z attached.
GridFn neg_log_derivative(const GridFn& z) {
  const auto d1 = z.derivative(1);
  const auto d2 = z.derivative(2);
  std::vector<double> a(z.size()), da(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    a[i] = -d1[i] / z[i];
    da[i] = a[i] * a[i] - d2[i] / z[i];
  }
  return GridFn(z.grid(), std::move(a), {std::move(da)});
}

}  // namespace

GridFn seed_eigenfunction(const SchrodingerProblem& prob, double c, double x0, double value, double slope,
                          const Grid& grid) {
  const Potential& u = prob.u;
  GridFn z = rk4_ivp([](double) { return 0.0; }, [&u, c](double x) { return -(u(x) + c); }, x0, value, slope, grid);
  require_nonvanishing(z, "seed");
  return z;
}

GridFn classical_darboux(const SchrodingerProblem& prob, const GridFn& zeta) {
  require_nonvanishing(zeta, "zeta");
  const auto d1 = zeta.derivative(1);
  const auto d2 = zeta.derivative(2);
  std::vector<double> v(zeta.size());
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const double l = d1[i] / zeta[i];
    v[i] = prob.u(zeta.grid().x(i)) - 2.0 * (d2[i] / zeta[i] - l * l);
  }
  return GridFn(zeta.grid(), std::move(v));
}

GridFn apply_classical_map(const SchrodingerProblem& prob, const GridFn& zeta, const GridFn& phi) {
  require_nonvanishing(zeta, "zeta");
  const GridFn A = neg_log_derivative(zeta);
  const auto dA = A.derivative(1);
  const auto p1 = phi.derivative(1);
  std::vector<double> psi(phi.size()), dpsi(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double x = phi.grid().x(i);
    psi[i] = A[i] * phi[i] + p1[i];
    dpsi[i] = (prob.u(x) + prob.lambda + dA[i]) * phi[i] + A[i] * p1[i];
  }
  if (!phi.has_analytic(1)) return GridFn(phi.grid(), std::move(psi));
  return GridFn(phi.grid(), std::move(psi), {std::move(dpsi)});
}

SeedPair make_seed_pair(const SchrodingerProblem& prob, double c, const GridFn& zeta1, const GridFn& zeta2,
                        const Tolerances& tol) {
  if (!(zeta1.grid() == zeta2.grid())) throw Error(ErrorCode::grid, "seeds live on different grids");
  require_nonvanishing(zeta1, "zeta1");
  require_nonvanishing(zeta2, "zeta2");
  require_eigenfunction(prob, c, zeta1, tol, ErrorCode::invalid_seed, "zeta1");
  require_eigenfunction(prob, c, zeta2, tol, ErrorCode::invalid_seed, "zeta2");
  return {c, zeta1, zeta2, neg_log_derivative(zeta1), neg_log_derivative(zeta2)};
}

FracDarbouxResult fractional_darboux(const SchrodingerProblem& prob, double c, const GridFn& zeta1,
                                     const GridFn& zeta2, const Tolerances& tol) {
  SeedPair seeds = make_seed_pair(prob, c, zeta1, zeta2, tol);
  const Grid& grid = zeta1.grid();
  const std::size_t n = grid.size();
  const auto& A = seeds.A.values();
  const auto& B = seeds.B.values();
  const auto z1p = zeta1.derivative(1), z1pp = zeta1.derivative(2), z2p = zeta2.derivative(1);

  std::vector<double> v(n), du(n), du_log(n);
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = prob.u(grid.x(i));
    const double dA = A[i] * A[i] - u - c;
    v[i] = 2.0 * A[i] * (A[i] - B[i]) - c;
    du[i] = A[i] * (A[i] - 2.0 * B[i]) + dA;
    const double l1 = z1p[i] / zeta1[i], l2 = z2p[i] / zeta2[i];
    const double dl1 = z1pp[i] / zeta1[i] - l1 * l1;
    du_log[i] = l1 * l1 - 2.0 * l1 * l2 - dl1;
    gap = std::max(gap, std::abs(du[i] - du_log[i]));
  }
  return {GridFn(grid, std::move(v)), GridFn(grid, std::move(du)), GridFn(grid, std::move(du_log)), gap,
          std::move(seeds)};
}

double ansatz_residual(const SeedPair& seeds) {
  const auto dA = seeds.A.derivative(1), dB = seeds.B.derivative(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < seeds.A.size(); ++i) {
    const double a = seeds.A[i], b = seeds.B[i];
    worst = std::max(worst, std::abs((dB[i] - dA[i]) - (b * b - a * a)));
  }
  return worst;
}

double potential_reconstruction_error(const SchrodingerProblem& prob, const SeedPair& seeds) {
  const auto dA = seeds.A.derivative(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < seeds.A.size(); ++i) {
    const double a = seeds.A[i];
    worst = std::max(worst, std::abs(a * a - dA[i] - seeds.c - prob.u(seeds.A.grid().x(i))));
  }
  return worst;
}

GridFn apply_fractional_map(const SchrodingerProblem& prob, const SeedPair& seeds, const GridFn& phi,
                            const Tolerances& tol) {
  if (!(phi.grid() == seeds.A.grid())) throw Error(ErrorCode::grid, "phi and seeds live on different grids");
  const double c = seeds.c;
  require_eigenfunction(prob, c, phi, tol, ErrorCode::eigenvalue_mismatch, "phi");
  const Grid& grid = phi.grid();
  const std::size_t n = grid.size();
  const auto p1 = phi.derivative(1);
  const auto& A = seeds.A.values();
  const auto& B = seeds.B.values();

  std::vector<double> num(n), den(n), psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    num[i] = A[i] * phi[i] + p1[i];
    den[i] = B[i] * phi[i] + p1[i];
  }
  if (auto x = find_zero_crossing(grid, den))
    throw LocatedError(ErrorCode::pole, "B phi + phi' vanishes near x = " + at(*x), *x);
  for (std::size_t i = 0; i < n; ++i) psi[i] = num[i] / den[i];
  if (!phi.has_analytic(1)) return GridFn(grid, std::move(psi));

  // A' = A^2 - u - c, A'' = 2 A A' - u'; phi'' = (u + c) phi, phi''' = u' phi + (u + c) phi'.
  std::vector<double> d1(n), d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const double w = prob.u(x) + c, dw = prob.u.derivative(x);
    const double a = A[i], b = B[i], f = phi[i], f1 = p1[i];
    const double a1 = a * a - w, b1 = b * b - w;
    const double a2 = 2 * a * a1 - dw, b2 = 2 * b * b1 - dw;
    const double f2 = w * f, f3 = dw * f + w * f1;
    const double N = num[i], D = den[i];
    const double N1 = a1 * f + a * f1 + f2, D1 = b1 * f + b * f1 + f2;
    const double N2 = a2 * f + 2 * a1 * f1 + a * f2 + f3, D2 = b2 * f + 2 * b1 * f1 + b * f2 + f3;
    const double q = N1 * D - N * D1;
    d1[i] = q / (D * D);
    d2[i] = (N2 * D - N * D2) / (D * D) - 2 * D1 * q / (D * D * D);
  }
  return GridFn(grid, std::move(psi), {std::move(d1), std::move(d2)});
}

namespace {

struct ConstantEntries {
  Rational a, b, g, d;
};

ConstantEntries unit_determinant_entries(const MobiusMap& m) {
  if (!m.is_constant()) throw Error(ErrorCode::normalization, "Q, R forms need a constant map");
  ConstantEntries e{*m.alpha.constant_value(), *m.beta.constant_value(), *m.gamma.constant_value(),
                    *m.delta.constant_value()};
  if (e.a * e.d - e.b * e.g != 1)
    throw Error(ErrorCode::normalization,
                "map determinant is " + rational_string(e.a * e.d - e.b * e.g) + ", expected 1");
  return e;
}

}  // namespace

TransformedSchrodingerForm schrodinger_QR(const Potential& u, double lambda, const MobiusMap& m) {
  const auto e = unit_determinant_entries(m);
  const double a = to_double(e.a), b = to_double(e.b), g = to_double(e.g), d = to_double(e.d);
  TransformedSchrodingerForm out;
  out.Q = [=](double x) {
    const double w = u(x) + lambda;
    const double den = b * b * w - a * a;
    if (den == 0.0) throw LocatedError(ErrorCode::pole, "beta^2 (u + lambda) - alpha^2 vanishes at x = " + at(x), x);
    return 2 * a * g - 2 * b * d * w - b * b * u.derivative(x) / den;
  };
  out.R = [=](double x) {
    const double w = u(x) + lambda;
    return (d * d * w - g * g) * (b * b * w - a * a);
  };
  return out;
}

std::pair<RationalExpr, RationalExpr> schrodinger_QR_exact(const RationalExpr& u, const Rational& lambda,
                                                           const MobiusMap& m) {
  const auto e = unit_determinant_entries(m);
  using E = RationalExpr;
  const E a(e.a), b(e.b), g(e.g), d(e.d);
  const E w = u + E(lambda);
  const E den = b * b * w - a * a;
  if (den.is_zero()) throw Error(ErrorCode::pole, "beta^2 (u + lambda) - alpha^2 vanishes identically");
  const E Q = E(2) * a * g - E(2) * b * d * w - b * b * u.derivative() / den;
  const E R = (d * d * w - g * g) * den;
  return {Q, R};
}

}  // namespace fdt
