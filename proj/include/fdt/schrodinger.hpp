#pragma once

#include <optional>

#include "fdt/grid.hpp"
#include "fdt/numeric.hpp"
#include "fdt/rational_expr.hpp"
#include "fdt/riccati_mobius.hpp"

namespace fdt {

/// A potential u(x): a rational expression or a black-box function. Black-box
/// potentials without an analytic derivative are differentiated by a 4th-order
/// central difference.
class Potential {
 public:
  static Potential rational(RationalExpr u);
  static Potential black_box(ScalarFn u, ScalarFn du = nullptr);

  double operator()(double x) const { return u_(x); }
  double derivative(double x) const;
  const std::optional<RationalExpr>& expr() const { return expr_; }

 private:
  ScalarFn u_;
  ScalarFn du_;
  std::optional<RationalExpr> expr_;
};

/// phi'' = (u + lambda) phi
struct SchrodingerProblem {
  Potential u;
  double lambda = 0.0;
};

/// Two seeds at a shared eigenvalue c. A = -zeta1'/zeta1, B = -zeta2'/zeta2; the
/// attached derivatives A' = A^2 - zeta1''/zeta1 and B' = B^2 - zeta2''/zeta2 use
/// the seeds' own second derivatives.
struct SeedPair {
  double c = 0.0;
  GridFn zeta1;
  GridFn zeta2;
  GridFn A;
  GridFn B;
};

struct FracDarbouxResult {
  GridFn v;
  GridFn delta_u;
  /// [(ln z1)']^2 - 2 (ln z1)'(ln z2)' - (ln z1)'' from the seed derivatives.
  GridFn delta_u_log;
  /// sup |delta_u - delta_u_log|
  double dual_gap = 0.0;
  SeedPair seeds;
};

/// Coefficients of u'' + Q u' + R u = 0.
struct TransformedSchrodingerForm {
  ScalarFn Q;
  ScalarFn R;
};

/// zeta'' = (u + c) zeta by RK4 from (x0, value, slope); x0 must be a grid node.
/// Throws LocatedError(nonvanishing) when the solution has a zero on the grid.
GridFn seed_eigenfunction(const SchrodingerProblem& prob, double c, double x0, double value, double slope,
                          const Grid& grid);

/// v = u - 2 (ln zeta)''. Throws LocatedError(nonvanishing) at a zero of zeta.
GridFn classical_darboux(const SchrodingerProblem& prob, const GridFn& zeta);

/// psi = phi' - (zeta'/zeta) phi, with psi' attached when phi' is analytic.
GridFn apply_classical_map(const SchrodingerProblem& prob, const GridFn& zeta, const GridFn& phi);

/// Validates both seeds against zeta'' = (u + c) zeta and builds A, B.
/// Errors: LocatedError(nonvanishing) at a seed zero, LocatedError(invalid_seed)
/// where the seed residual exceeds tol.seed_relative * (1 + sup|zeta|).
SeedPair make_seed_pair(const SchrodingerProblem& prob, double c, const GridFn& zeta1, const GridFn& zeta2,
                        const Tolerances& tol = {});

/// v = 2A(A - B) - c and delta_u = A(A - 2B) + A' with A' = A^2 - u - c; the
/// log-derivative form is evaluated independently and compared.
FracDarbouxResult fractional_darboux(const SchrodingerProblem& prob, double c, const GridFn& zeta1,
                                     const GridFn& zeta2, const Tolerances& tol = {});

/// sup over the grid of |(B - A)' - (B^2 - A^2)|.
double ansatz_residual(const SeedPair& seeds);

/// sup over the grid of |A^2 - A' - c - u| for the first seed.
double potential_reconstruction_error(const SchrodingerProblem& prob, const SeedPair& seeds);

/// psi = (A phi + phi') / (B phi + phi'). phi must solve the source equation at
/// lambda = c. When phi' is analytic, psi' and psi'' are attached in closed form.
/// Errors: LocatedError(eigenvalue_mismatch) where phi's residual exceeds the seed
/// tolerance, LocatedError(pole) at a zero of B phi + phi'.
GridFn apply_fractional_map(const SchrodingerProblem& prob, const SeedPair& seeds, const GridFn& phi,
                            const Tolerances& tol = {});

/// Q = 2 alpha gamma - 2 beta delta (u + lambda) - beta^2 u' / (beta^2 (u + lambda) - alpha^2),
/// R = [delta^2 (u + lambda) - gamma^2][beta^2 (u + lambda) - alpha^2].
/// Requires constant entries with determinant exactly 1 (Error(normalization)).
/// Q throws LocatedError(pole) where beta^2 (u + lambda) = alpha^2.
TransformedSchrodingerForm schrodinger_QR(const Potential& u, double lambda, const MobiusMap& m);

/// Exact Q, R for a rational potential and rational lambda.
std::pair<RationalExpr, RationalExpr> schrodinger_QR_exact(const RationalExpr& u, const Rational& lambda,
                                                           const MobiusMap& m);

}  // namespace fdt
