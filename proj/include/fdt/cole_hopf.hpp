#pragma once

#include <array>
#include <string>
#include <vector>

#include "fdt/grid.hpp"
#include "fdt/numeric.hpp"
#include "fdt/rational_expr.hpp"

namespace fdt {

/// psi = (A phi + C phi_x) / (B phi + D phi_x), coefficients depending on x only.
class ColeHopfMap {
 public:
  /// Throws Error(construction) when B and D are both identically zero.
  ColeHopfMap(RationalExpr A, RationalExpr B, RationalExpr C, RationalExpr D);

  const RationalExpr& A() const { return A_; }
  const RationalExpr& B() const { return B_; }
  const RationalExpr& C() const { return C_; }
  const RationalExpr& D() const { return D_; }

  bool is_constant() const;
  /// D = 0 and B = 1.
  bool is_reduced() const;

  /// A phi + C phi_x
  double numerator(double x, double phi, double phi_x) const;
  /// B phi + D phi_x
  double denominator(double x, double phi, double phi_x) const;

 private:
  RationalExpr A_, B_, C_, D_;
};

/// psi = -2 nu phi_x / phi. Throws LocatedError(pole) where phi vanishes.
GridField classic_cole_hopf(const GridField& phi, double nu);

/// Pointwise psi. Throws LocatedError(pole) at a zero of B phi + D phi_x.
GridField generalized_map(const ColeHopfMap& m, const GridField& phi);

/// phi_x / phi = (B psi - A) / (C - D psi), pointwise.
GridField invert_generalized_map(const ColeHopfMap& m, const GridField& psi);

/// psi_t + psi psi_x - nu psi_xx
PdeOperator burgers_operator(double nu);

/// psi_t - psi_xx - 2 psi_x (A - B psi - D psi_x) / (D psi - C) for a constant map.
/// Errors: Error(construction) for a non-constant map; LocatedError(pole) where
/// D psi - C vanishes at an interior node.
PDEResidualReport generalized_burgers_residual(const ColeHopfMap& m, const std::vector<GridField>& levels);

/// psi_t - psi_xx = linear psi_x + quadratic psi psi_x, the D = 0 constant case.
struct BurgersForm {
  Rational linear;
  Rational quadratic;
};

/// Throws Error(construction) unless the map is constant with D = 0 and C != 0.
BurgersForm burgers_reduction(const ColeHopfMap& m);

/// Residual of the variable-coefficient equation for psi = A + C phi_x / phi,
/// with the right-hand side exactly as printed:
///   C^2 (psi_t - psi_xx) = -C' psi^2 + [C'(2A + C') - C(C' - 2A)' + 2C psi_x] psi
///                          - C(C' + 2A) psi_x + AC(C' + 2A)' - A(C'' + C'A) + C(C'A' - A''C).
/// Throws LocatedError(pole) where C vanishes on the grid.
PDEResidualReport variable_coeff_residual(const RationalExpr& A, const RationalExpr& C,
                                          const std::vector<GridField>& levels);

/// Same, with the right-hand side obtained by direct substitution:
///   -2C' psi^2 + 2C psi psi_x + (4AC' - 2CA' - CC'' + 2C'^2) psi - 2C(A + C') psi_x
///   - 2A^2 C' + 2ACA' + ACC'' - 2AC'^2 - C^2 A'' + 2CA'C'.
PDEResidualReport variable_coeff_residual_derived(const RationalExpr& A, const RationalExpr& C,
                                                  const std::vector<GridField>& levels);

/// Coefficients of C^2 psi'' = c3 psi^3 + c2 psi^2 + c1 psi + c0, index k for psi^k.
using CubicCoeffs = std::array<RationalExpr, 4>;

/// For psi = A + C phi'/phi with phi'' + q phi' + r phi = 0.
CubicCoeffs derived_cubic_coeffs(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                 const RationalExpr& C);

/// The printed coefficients, verbatim. They equal derived_cubic_coeffs(-q, -r, A, C).
CubicCoeffs printed_cubic_coeffs(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                 const RationalExpr& C);

struct CoefficientFit {
  Grid grid;
  /// fitted[i][k]: coefficient of psi^k at grid.x(i).
  std::vector<std::array<double, 4>> fitted;
  double max_fit_residual = 0.0;
  double max_condition = 0.0;
};

/// Pointwise least-squares fit of C^2 psi'' against {psi^3, psi^2, psi, 1} over the
/// supplied solutions phi of phi'' + q phi' + r phi = 0 (each carrying phi').
/// psi'' is obtained by the chain rule from phi'' = -q phi' - r phi.
/// Errors: Error(conditioning) with fewer than 4 solutions or a condition number
/// above 1e10; LocatedError(nonvanishing) where a phi vanishes.
CoefficientFit coefficient_fit_oracle(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                      const RationalExpr& C, const std::vector<GridFn>& phis);

struct NonlinearODEForm {
  CubicCoeffs derived;
  CubicCoeffs printed;
  /// "derived", "printed", "both" or "neither": which coefficient set the oracle accepted.
  std::string sign_convention;
  /// sup over solutions and grid of |C^2 psi'' - sum c_k psi^k| / (1 + |C^2 psi''|).
  double derived_residual = 0.0;
  double printed_residual = 0.0;
  /// sup |fitted - coefficient| over the grid and the four monomials.
  double derived_fit_deviation = 0.0;
  double printed_fit_deviation = 0.0;
  double fit_residual = 0.0;
};

/// Builds both coefficient sets and runs the substitution residual and the fit
/// oracle on RK4 solutions with phi(a) = 1 and several slopes on [a, b].
/// A set is accepted when both its residual and fit deviation are <= tol.
/// Throws Error(oracle_inconclusive) when fewer than 4 nonvanishing solutions exist.
NonlinearODEForm nonlinear_ode_form(const RationalExpr& q, const RationalExpr& r, const RationalExpr& A,
                                    const RationalExpr& C, double a = 0.5, double b = 1.0, std::size_t n = 201,
                                    double tol = 1e-8);

}  // namespace fdt
