#include "fdt/cole_hopf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdt/errors.hpp"
#include "fdt/riccati_mobius.hpp"

namespace fdt {

namespace {

using E = RationalExpr;

std::string at(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// e, e', e'' evaluated together.
struct Jet {
  E f, d1, d2;
  explicit Jet(const E& e) : f(e), d1(e.derivative()), d2(d1.derivative()) {}
};

}  // namespace

ColeHopfMap::ColeHopfMap(RationalExpr A, RationalExpr B, RationalExpr C, RationalExpr D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  if (B_.is_zero() && D_.is_zero()) throw Error(ErrorCode::construction, "B and D both vanish identically");
}

bool ColeHopfMap::is_constant() const {
  return A_.is_constant() && B_.is_constant() && C_.is_constant() && D_.is_constant();
}

bool ColeHopfMap::is_reduced() const { return D_.is_zero() && B_ == E(1); }

double ColeHopfMap::numerator(double x, double phi, double phi_x) const {
  return A_.evaluate(x) * phi + C_.evaluate(x) * phi_x;
}

double ColeHopfMap::denominator(double x, double phi, double phi_x) const {
  return B_.evaluate(x) * phi + D_.evaluate(x) * phi_x;
}

GridField classic_cole_hopf(const GridField& phi, double nu) {
  const auto px = phi.dx();
  const std::size_t nx = phi.xgrid().size(), nt = phi.tgrid().size();
  std::vector<double> psi(nx * nt);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double f = phi(i, j);
      if (f == 0.0 || !std::isfinite(f) ||
          (i + 1 < nx && std::signbit(f) != std::signbit(phi(i + 1, j))))
        throw LocatedError(ErrorCode::pole, "phi vanishes near x = " + at(phi.xgrid().x(i)), phi.xgrid().x(i));
      psi[j * nx + i] = -2.0 * nu * px[j * nx + i] / f;
    }
  return GridField(phi.xgrid(), phi.tgrid(), std::move(psi));
}

GridField generalized_map(const ColeHopfMap& m, const GridField& phi) {
  const auto px = phi.dx();
  const std::size_t nx = phi.xgrid().size(), nt = phi.tgrid().size();
  std::vector<double> den(nx * nt), psi(nx * nt);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = phi.xgrid().x(i);
      const std::size_t k = j * nx + i;
      den[k] = m.denominator(x, phi(i, j), px[k]);
      psi[k] = m.numerator(x, phi(i, j), px[k]);
    }
  for (std::size_t j = 0; j < nt; ++j) {
    std::span<const double> row(den.data() + j * nx, nx);
    if (auto x = find_zero_crossing(phi.xgrid(), row))
      throw LocatedError(ErrorCode::pole, "B phi + D phi_x vanishes near x = " + at(*x), *x);
  }
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] /= den[k];
  return GridField(phi.xgrid(), phi.tgrid(), std::move(psi));
}

GridField invert_generalized_map(const ColeHopfMap& m, const GridField& psi) {
  const std::size_t nx = psi.xgrid().size(), nt = psi.tgrid().size();
  std::vector<double> rho(nx * nt);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = psi.xgrid().x(i), p = psi(i, j);
      const double den = m.C().evaluate(x) - m.D().evaluate(x) * p;
      if (den == 0.0) throw LocatedError(ErrorCode::pole, "C - D psi vanishes at x = " + at(x), x);
      rho[j * nx + i] = (m.B().evaluate(x) * p - m.A().evaluate(x)) / den;
    }
  return GridField(psi.xgrid(), psi.tgrid(), std::move(rho));
}

PdeOperator burgers_operator(double nu) {
  return [nu](const PointStencil& s) { return s.u_t + s.u * s.u_x - nu * s.u_xx; };
}

PDEResidualReport generalized_burgers_residual(const ColeHopfMap& m, const std::vector<GridField>& levels) {
  if (!m.is_constant()) throw Error(ErrorCode::construction, "generalized Burgers residual needs a constant map");
  const double A = m.A().evaluate(0.0), B = m.B().evaluate(0.0), C = m.C().evaluate(0.0), D = m.D().evaluate(0.0);
  for (const auto& f : levels)
    for (std::size_t j = 0; j < f.tgrid().size(); ++j)
      for (std::size_t i = 1; i + 1 < f.xgrid().size(); ++i)
        if (D * f(i, j) - C == 0.0)
          throw LocatedError(ErrorCode::pole, "D psi - C vanishes at x = " + at(f.xgrid().x(i)), f.xgrid().x(i));
  return pde_residual(levels, [=](const PointStencil& s) {
    return s.u_t - s.u_xx - 2.0 * s.u_x * (A - B * s.u - D * s.u_x) / (D * s.u - C);
  });
}

BurgersForm burgers_reduction(const ColeHopfMap& m) {
  if (!m.is_constant() || !m.D().is_zero() || m.C().is_zero())
    throw Error(ErrorCode::construction, "Burgers reduction needs constant A, B, C with D = 0 and C != 0");
  const Rational A = *m.A().constant_value(), B = *m.B().constant_value(), C = *m.C().constant_value();
  // 2 psi_x (A - B psi) / (-C)
  return {Rational(-2 * A / C), Rational(2 * B / C)};
}

namespace {

// Right-hand side of C^2 (psi_t - psi_xx) = rhs(x, psi, psi_x).
using VarRhs = std::function<double(double x, double psi, double psi_x)>;

PDEResidualReport variable_residual(const RationalExpr& C, const std::vector<GridField>& levels, const VarRhs& rhs) {
  for (const auto& f : levels)
    for (std::size_t i = 0; i < f.xgrid().size(); ++i) {
      const double x = f.xgrid().x(i);
      if (C.evaluate(x) == 0.0) throw LocatedError(ErrorCode::pole, "C vanishes at x = " + at(x), x);
    }
  return pde_residual(levels, [&](const PointStencil& s) {
    const double c = C.evaluate(s.x);
    return c * c * (s.u_t - s.u_xx) - rhs(s.x, s.u, s.u_x);
  });
}

}  // namespace

PDEResidualReport variable_coeff_residual(const RationalExpr& A, const RationalExpr& C,
                                          const std::vector<GridField>& levels) {
  const Jet a(A), c(C);
  const E bracket = c.d1 * (E(2) * A + c.d1) - C * (c.d1 - E(2) * A).derivative();
  const E lin_x = -(C * (c.d1 + E(2) * A));
  const E konst = A * C * (c.d1 + E(2) * A).derivative() - A * (c.d2 + c.d1 * A) + C * (c.d1 * a.d1 - a.d2 * C);
  return variable_residual(C, levels, [&](double x, double psi, double psi_x) {
    const double cx = C.evaluate(x);
    return -c.d1.evaluate(x) * psi * psi + (bracket.evaluate(x) + 2.0 * cx * psi_x) * psi +
           lin_x.evaluate(x) * psi_x + konst.evaluate(x);
  });
}

PDEResidualReport variable_coeff_residual_derived(const RationalExpr& A, const RationalExpr& C,
                                                  const std::vector<GridField>& levels) {
  const Jet a(A), c(C);
  const E lin = E(4) * A * c.d1 - E(2) * C * a.d1 - C * c.d2 + E(2) * c.d1 * c.d1;
  const E lin_x = E(-2) * C * (A + c.d1);
  const E konst = E(-2) * A * A * c.d1 + E(2) * A * C * a.d1 + A * C * c.d2 - E(2) * A * c.d1 * c.d1 -
                  C * C * a.d2 + E(2) * C * a.d1 * c.d1;
  return variable_residual(C, levels, [&](double x, double psi, double psi_x) {
    return -2.0 * c.d1.evaluate(x) * psi * psi + 2.0 * C.evaluate(x) * psi * psi_x + lin.evaluate(x) * psi +
           lin_x.evaluate(x) * psi_x + konst.evaluate(x);
  });
}

CubicCoeffs derived_cubic_coeffs(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                 const RationalExpr& C) {
  const Jet a(A), c(C);
  const E q1 = q.derivative(), r1 = r.derivative();
  const E& C1 = c.d1;
  const E& C2 = c.d2;
  CubicCoeffs k;
  k[3] = E(2);
  k[2] = E(-6) * A + E(3) * C * q - E(2) * C1;
  k[1] = E(6) * A * A - E(6) * A * C * q + E(4) * A * C1 + C * C * q * q + E(2) * C * C * r - C * C * q1 -
         E(2) * C * q * C1 + C * C2;
  k[0] = E(-2) * A.pow(3) + E(3) * A * A * C * q - E(2) * A * A * C1 - A * C * C * q * q - E(2) * A * C * C * r +
         A * C * C * q1 + E(2) * A * C * q * C1 - A * C * C2 + C.pow(3) * q * r - C.pow(3) * r1 -
         E(2) * C * C * r * C1 + C * C * a.d2;
  return k;
}

CubicCoeffs printed_cubic_coeffs(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                 const RationalExpr& C) {
  const Jet a(A), c(C);
  const E q1 = q.derivative(), r1 = r.derivative();
  const E& C1 = c.d1;
  const E& C2 = c.d2;
  CubicCoeffs k;
  k[3] = E(2);
  k[2] = -(E(3) * q * C + E(6) * A + E(2) * C1);
  k[1] = (E(-2) * r + q1 + q * q) * C * C + (C2 + E(2) * q * C1 + E(6) * A * q) * C + E(6) * A * A + E(4) * C1 * A;
  k[0] = (r1 + q * r) * C.pow(3) + ((-q1 - q * q + E(2) * r) * A + a.d2 + E(2) * C1 * r) * C * C +
         (E(-3) * q * A * A - (C2 + E(2) * q * C1) * A) * C - E(2) * A.pow(3) - E(2) * C1 * A * A;
  return k;
}

namespace {

// psi, C^2 psi'' at grid node i for psi = A + C rho, rho = phi'/phi.
struct PsiSample {
  double psi;
  double lhs;
};

struct PsiJets {
  Jet A, C;
  E q, q1, r, r1;
  PsiJets(const E& q_, const E& r_, const E& A_, const E& C_)
      : A(A_), C(C_), q(q_), q1(q_.derivative()), r(r_), r1(r_.derivative()) {}

  PsiSample at(double x, double rho) const {
    const double qv = q.evaluate(x), q1v = q1.evaluate(x), rv = r.evaluate(x), r1v = r1.evaluate(x);
    // rho' = -q rho - r - rho^2
    const double rho1 = -qv * rho - rv - rho * rho;
    const double rho2 = -q1v * rho - qv * rho1 - r1v - 2.0 * rho * rho1;
    const double c = C.f.evaluate(x), c1 = C.d1.evaluate(x), c2 = C.d2.evaluate(x);
    const double psi = A.f.evaluate(x) + c * rho;
    const double psi2 = A.d2.evaluate(x) + c2 * rho + 2.0 * c1 * rho1 + c * rho2;
    return {psi, c * c * psi2};
  }
};

std::vector<double> rho_of(const GridFn& phi) {
  if (auto x = find_zero_crossing(phi.grid(), phi.values()))
    throw LocatedError(ErrorCode::nonvanishing, "phi vanishes near x = " + at(*x), *x);
  const auto d1 = phi.derivative(1);
  std::vector<double> rho(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) rho[i] = d1[i] / phi[i];
  return rho;
}

double coeff_residual(const std::vector<std::vector<double>>& rhos, const Grid& grid, const PsiJets& jets,
                      const CubicCoeffs& k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double k0 = k[0].evaluate(x), k1 = k[1].evaluate(x), k2 = k[2].evaluate(x), k3 = k[3].evaluate(x);
    for (const auto& rho : rhos) {
      const auto s = jets.at(x, rho[i]);
      const double rhs = ((k3 * s.psi + k2) * s.psi + k1) * s.psi + k0;
      worst = std::max(worst, std::abs(s.lhs - rhs) / (1.0 + std::abs(s.lhs)));
    }
  }
  return worst;
}

double fit_deviation(const CoefficientFit& fit, const CubicCoeffs& k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fit.grid.size(); ++i)
    for (int m = 0; m < 4; ++m)
      worst = std::max(worst, std::abs(fit.fitted[i][m] - k[m].evaluate(fit.grid.x(i))));
  return worst;
}

}  // namespace

CoefficientFit coefficient_fit_oracle(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                      const RationalExpr& C, const std::vector<GridFn>& phis) {
  if (phis.size() < 4) throw Error(ErrorCode::conditioning, "coefficient fit needs at least 4 solutions");
  const Grid& grid = phis.front().grid();
  std::vector<std::vector<double>> rhos;
  for (const auto& phi : phis) {
    if (!(phi.grid() == grid)) throw Error(ErrorCode::grid, "solutions live on different grids");
    rhos.push_back(rho_of(phi));
  }
  const PsiJets jets(q, r, A, C);
  CoefficientFit fit{grid, std::vector<std::array<double, 4>>(grid.size())};
  const auto m = static_cast<Eigen::Index>(phis.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    Eigen::MatrixXd V(m, 4);
    Eigen::VectorXd y(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto s = jets.at(x, rhos[j][i]);
      V(j, 0) = 1.0;
      V(j, 1) = s.psi;
      V(j, 2) = s.psi * s.psi;
      V(j, 3) = s.psi * s.psi * s.psi;
      y(j) = s.lhs;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(cond <= 1e10))
      throw LocatedError(ErrorCode::conditioning, "collinear samples at x = " + at(x), x);
    fit.max_condition = std::max(fit.max_condition, cond);
    const Eigen::VectorXd c = svd.solve(y);
    for (int k = 0; k < 4; ++k) fit.fitted[i][k] = c(k);
    fit.max_fit_residual = std::max(fit.max_fit_residual, (V * c - y).lpNorm<Eigen::Infinity>());
  }
  return fit;
}

NonlinearODEForm nonlinear_ode_form(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                    const RationalExpr& C, double a, double b, std::size_t n, double tol) {
  NonlinearODEForm out;
  out.derived = derived_cubic_coeffs(q, r, A, C);
  out.printed = printed_cubic_coeffs(q, r, A, C);

  const Grid grid(a, b, n);
  const ScalarFn qf = [q](double x) { return q.evaluate(x); };
  const ScalarFn rf = [r](double x) { return r.evaluate(x); };
  std::vector<GridFn> phis;
  for (double slope : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
    try {
      GridFn phi = rk4_ivp(qf, rf, a, 1.0, slope, grid);
      if (!find_zero_crossing(grid, phi.values())) phis.push_back(std::move(phi));
    } catch (const Error&) {
    }
  }
  if (phis.size() < 4)
    throw Error(ErrorCode::oracle_inconclusive, "fewer than 4 nonvanishing solutions on the validation interval");

  std::vector<std::vector<double>> rhos;
  for (const auto& phi : phis) rhos.push_back(rho_of(phi));
  const PsiJets jets(q, r, A, C);
  out.derived_residual = coeff_residual(rhos, grid, jets, out.derived);
  out.printed_residual = coeff_residual(rhos, grid, jets, out.printed);

  const CoefficientFit fit = coefficient_fit_oracle(q, r, A, C, phis);
  out.fit_residual = fit.max_fit_residual;
  out.derived_fit_deviation = fit_deviation(fit, out.derived);
  out.printed_fit_deviation = fit_deviation(fit, out.printed);

  const bool d = out.derived_residual <= tol && out.derived_fit_deviation <= tol;
  const bool p = out.printed_residual <= tol && out.printed_fit_deviation <= tol;
  out.sign_convention = d && p ? "both" : d ? "derived" : p ? "printed" : "neither";
  return out;
}

}  // namespace fdt
