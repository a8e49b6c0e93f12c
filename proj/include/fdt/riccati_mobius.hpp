#pragma once

#include <optional>

#include "fdt/grid.hpp"
#include "fdt/rational_expr.hpp"

namespace fdt {

/// p w'' + q w' + r w = 0 with p not identically zero.
class LinearODE2 {
 public:
  /// Throws Error(degenerate_ode) when p is identically zero.
  LinearODE2(RationalExpr p, RationalExpr q, RationalExpr r);

  const RationalExpr& p() const { return p_; }
  const RationalExpr& q() const { return q_; }
  const RationalExpr& r() const { return r_; }
  ExprTriple triple() const { return {p_, q_, r_}; }

  /// (1, q/p, r/p)
  LinearODE2 normalized() const;

  /// Coefficient evaluators for the numeric engines, already divided by p.
  ScalarFn q_over_p() const;
  ScalarFn r_over_p() const;

 private:
  RationalExpr p_, q_, r_;
};

/// z' = F z^2 + G z + H
struct RiccatiEq {
  RationalExpr F, G, H;

  /// F identically zero; the equation is linear and riccati_to_ode cannot invert it.
  bool has_vanishing_quadratic() const { return F.is_zero(); }
  /// True for the image of ode_to_riccati (F = -1).
  bool is_canonical() const { return F == RationalExpr(-1); }
};

/// y = (alpha z + gamma) / (beta z + delta)
struct MobiusMap {
  RationalExpr alpha, beta, gamma, delta;

  static MobiusMap identity() { return {1, 0, 0, 1}; }
  static MobiusMap inversion() { return {0, 1, 1, 0}; }

  RationalExpr determinant() const { return alpha * delta - beta * gamma; }
  bool is_constant() const;

  /// this o other: y = this(other(z)); the 2x2 matrix product.
  MobiusMap compose(const MobiusMap& other) const;
};

/// y = a1 z1 + b1, z1 = 1 / z2, z2 = a2 z + b2
struct MobiusChain {
  Rational a1, b1, a2, b2;

  MobiusMap recompose() const;
};

/// (F, G, H) = (-1, -q/p, -r/p). Throws Error(degenerate_ode) on p = 0.
RiccatiEq ode_to_riccati(const LinearODE2& ode);

/// The Riccati equation satisfied by z when y = m(z) solves ric.
/// Throws Error(singular_map) when the determinant vanishes identically.
RiccatiEq mobius_apply(const RiccatiEq& ric, const MobiusMap& m);

/// The three coefficient formulas written in terms of q/p and r/p, valid for the
/// canonical image of ode. mobius_apply agrees with this on such inputs.
RiccatiEq mobius_apply_canonical(const LinearODE2& ode, const MobiusMap& m);

/// Substituting z = -u' / (F u): (1, -(G + F'/F), H F).
/// Throws Error(reconstruction) when F vanishes identically.
LinearODE2 riccati_to_ode(const RiccatiEq& ric);

/// riccati_to_ode(mobius_apply(ode_to_riccati(ode), m))
LinearODE2 conformal_transform(const LinearODE2& ode, const MobiusMap& m);

/// Maps a solution w of ode to a solution u of conformal_transform(ode, m):
///   u = exp( integral F (gamma w - delta w') / (alpha w - beta w') dx ),
/// with u = 1 at the left endpoint. w' is taken from w's analytic derivative when
/// attached, otherwise from finite differences. When w' is analytic the result
/// carries u' and u'' in closed form, with w'' from w's second derivative (analytic
/// when attached, else finite differences of w'), so a w that does not solve ode
/// shows up in the target residual.
///
/// Errors: LocatedError(pole_crossing) at a zero of alpha w - beta w' on the grid,
/// LocatedError(grid) when F has a pole on the grid.
GridFn transport_solution(const LinearODE2& ode, const MobiusMap& m, const GridFn& w);
/// Same, with the image's quadratic coefficient F already computed.
GridFn transport_solution(const MobiusMap& m, const GridFn& w, const RationalExpr& F);

/// (a1, b1, a2, b2) = (-det/beta, alpha/beta, beta, delta) for a constant map.
/// Throws Error(affine_only) when beta = 0 and Error(singular_map) when det = 0.
MobiusChain decompose_constant(const MobiusMap& m);

/// conformal_transform(ode, inversion) equals ode up to a factor.
bool inversion_invariance_check(const LinearODE2& ode);

/// Locates the first zero crossing of samples on grid (exact zero or sign change),
/// linearly interpolated. nullopt when the samples keep one sign.
std::optional<double> find_zero_crossing(const Grid& grid, std::span<const double> samples);

}  // namespace fdt
