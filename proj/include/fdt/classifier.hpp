#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdt/rational_expr.hpp"
#include "fdt/riccati_mobius.hpp"

namespace fdt {

enum class Branch { beta0, beta1_alpha_fixed };

std::string to_string(Branch b);

struct InvariantReport {
  Branch branch = Branch::beta0;
  std::optional<RationalExpr> alpha;  // beta1 only
  RationalExpr R1;
  std::optional<RationalExpr> N1;  // beta1 only, R1 * D1 = N1
  std::optional<RationalExpr> D1;  // beta1 only
};

struct EquivalenceVerdict {
  bool equivalent = false;
  Branch branch = Branch::beta0;
  /// The invariants that were compared: source side first.
  RationalExpr source_invariant;
  RationalExpr target_invariant;
  std::vector<std::string> notes;
};

/// (1, q/p, r/p)
LinearODE2 normalize_to_monic(const LinearODE2& ode);

/// R1 = r - q^2/4 - q'/2 on the monic form.
InvariantReport invariant_beta0(const LinearODE2& ode);

/// Appendix numerator N1(alpha; q, r), transcribed term for term from its printed form.
RationalExpr appendix_numerator(const RationalExpr& q, const RationalExpr& r, const RationalExpr& alpha);
/// D1 = 4 [alpha (alpha + q) + alpha' + r]
RationalExpr appendix_denominator(const RationalExpr& q, const RationalExpr& r, const RationalExpr& alpha);

/// beta = 1 branch with a fixed alpha: R1 = N1 / D1 using the printed formulas.
/// Throws Error(singular_branch) when D1 vanishes identically.
InvariantReport invariant_beta1(const LinearODE2& ode, const RationalExpr& alpha);

/// Independent route for the beta = 1 branch: apply the map (alpha, 1, -1, 0) to the
/// monic equation through the Riccati pipeline and return the beta = 0 invariant of
/// the image. Throws Error(singular_branch) when the image does not exist (F = 0).
RationalExpr invariant_beta1_via_mobius(const LinearODE2& ode, const RationalExpr& alpha);

/// Equal beta = 0 invariants.
EquivalenceVerdict equivalent_beta0(const LinearODE2& a, const LinearODE2& b);

/// The target's monic coefficients satisfy r1 = q1^2/4 + q1'/2 + R1(source, alpha)
/// with R1 from invariant_beta1. Notes record when the pipeline route disagrees.
EquivalenceVerdict equivalent_beta1(const LinearODE2& source, const LinearODE2& target, const RationalExpr& alpha);

/// The alpha-shifted pair q1 = 2 alpha + q, r1 = alpha^2 + alpha q + r + alpha'.
std::pair<RationalExpr, RationalExpr> beta0_shift(const RationalExpr& q, const RationalExpr& r,
                                                  const RationalExpr& alpha);

}  // namespace fdt
