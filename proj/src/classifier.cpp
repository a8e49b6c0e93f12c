#include "fdt/classifier.hpp"

#include "fdt/errors.hpp"

namespace fdt {

std::string to_string(Branch b) { return b == Branch::beta0 ? "beta0" : "beta1_alpha_fixed"; }

LinearODE2 normalize_to_monic(const LinearODE2& ode) { return ode.normalized(); }

InvariantReport invariant_beta0(const LinearODE2& ode) {
  const LinearODE2 m = ode.normalized();
  const RationalExpr& q = m.q();
  InvariantReport rep;
  rep.branch = Branch::beta0;
  rep.R1 = m.r() - q * q / RationalExpr(4) - q.derivative() / RationalExpr(2);
  return rep;
}

RationalExpr appendix_numerator(const RationalExpr& q, const RationalExpr& r, const RationalExpr& a) {
  using E = RationalExpr;
  const E a1 = a.derivative(), a2 = a1.derivative(), a3 = a2.derivative();
  const E q1 = q.derivative(), q2 = q1.derivative();
  const E r1 = r.derivative(), r2 = r1.derivative();
  const E qa1 = (q * a).derivative();

  E n = E(2) * (a * a + a * q + a1 + r) * a3;
  n -= E(3) * a2 * a2;
  n -= E(6) * (E(2) * a + qa1 + r1) * a2;
  n += E(12) * a1.pow(3);
  n += E(6) * (E(4) * r + q1 - q * q) * a1 * a1;
  n += (E(4) * (E(4) * r - E(2) * q1 - q * q) * a * a +
        E(2) * (q2 + E(8) * q * r - E(8) * r1 - E(2) * q.pow(3)) * a + E(8) * r * (E(2) * r + q1) -
        E(4) * q * (q * r + E(2) * r1) + E(2) * r2) *
       a1;
  n += (E(4) * r - E(2) * q1 - q * q) * a.pow(4);
  n += E(2) * (q2 - E(2) * r1 - q.pow(3) + E(4) * q * r - q1 * q) * a.pow(3);
  n += (E(8) * r * r - q.pow(4) + E(2) * q * q * r + (E(2) * q2 - E(6) * r1) * q - E(3) * q2 + E(2) * r2) * a * a;
  n += (E(8) * q * r * r + E(2) * (q2 + q1 * q - E(2) * r1 - q.pow(3)) * r + E(2) * r2 * q - E(2) * q * q * r1 -
        E(6) * r1 * q1) *
       a;
  n += E(4) * r.pow(3) + (E(2) * q1 - q * q) * r * r + (E(2) * r2 - E(2) * q * r1) * r - E(3) * r1 * r1;
  return n;
}

RationalExpr appendix_denominator(const RationalExpr& q, const RationalExpr& r, const RationalExpr& a) {
  return RationalExpr(4) * (a * (a + q) + a.derivative() + r);
}

InvariantReport invariant_beta1(const LinearODE2& ode, const RationalExpr& alpha) {
  const LinearODE2 m = ode.normalized();
  InvariantReport rep;
  rep.branch = Branch::beta1_alpha_fixed;
  rep.alpha = alpha;
  rep.D1 = appendix_denominator(m.q(), m.r(), alpha);
  if (rep.D1->is_zero())
    throw Error(ErrorCode::singular_branch, "D1 = 4[alpha(alpha+q) + alpha' + r] vanishes identically");
  rep.N1 = appendix_numerator(m.q(), m.r(), alpha);
  rep.R1 = *rep.N1 / *rep.D1;
  return rep;
}

RationalExpr invariant_beta1_via_mobius(const LinearODE2& ode, const RationalExpr& alpha) {
  const LinearODE2 m = ode.normalized();
  const MobiusMap map{alpha, 1, -1, 0};
  const RiccatiEq ric = mobius_apply(ode_to_riccati(m), map);
  if (ric.has_vanishing_quadratic())
    throw Error(ErrorCode::singular_branch, "beta = 1 image has F = 0; no conformal image exists");
  return invariant_beta0(riccati_to_ode(ric)).R1;
}

EquivalenceVerdict equivalent_beta0(const LinearODE2& a, const LinearODE2& b) {
  EquivalenceVerdict v;
  v.branch = Branch::beta0;
  v.source_invariant = invariant_beta0(a).R1;
  v.target_invariant = invariant_beta0(b).R1;
  v.equivalent = v.source_invariant == v.target_invariant;
  return v;
}

EquivalenceVerdict equivalent_beta1(const LinearODE2& source, const LinearODE2& target, const RationalExpr& alpha) {
  EquivalenceVerdict v;
  v.branch = Branch::beta1_alpha_fixed;
  const RationalExpr R1 = invariant_beta1(source, alpha).R1;
  const LinearODE2 t = target.normalized();
  const RationalExpr& q1 = t.q();
  // r1 = q1^2/4 + q1'/2 + R1  <=>  r1 - q1^2/4 - q1'/2 = R1
  v.source_invariant = R1;
  v.target_invariant = t.r() - q1 * q1 / RationalExpr(4) - q1.derivative() / RationalExpr(2);
  v.equivalent = v.source_invariant == v.target_invariant;
  try {
    const RationalExpr via = invariant_beta1_via_mobius(source, alpha);
    if (via != R1)
      v.notes.push_back("appendix R1 = " + R1.str() + " differs from the Riccati-pipeline R1 = " + via.str() +
                        "; pipeline verdict: " + (via == v.target_invariant ? "equivalent" : "not equivalent"));
  } catch (const Error& e) {
    v.notes.push_back(std::string("pipeline cross-check unavailable: ") + e.what());
  }
  return v;
}

std::pair<RationalExpr, RationalExpr> beta0_shift(const RationalExpr& q, const RationalExpr& r,
                                                  const RationalExpr& alpha) {
  return {RationalExpr(2) * alpha + q, alpha * alpha + alpha * q + r + alpha.derivative()};
}

}  // namespace fdt
