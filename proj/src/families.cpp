#include "fdt/families.hpp"

namespace fdt {

std::string param_string(const ParamList& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ", ";
    out += name + "=" + rational_string(value);
  }
  return out;
}

namespace family {
namespace {

using E = RationalExpr;
E k(const Rational& v) { return E(v); }

}  // namespace

LinearODE2 constant_coefficients(const Rational& a, const Rational& b, const Rational& c) {
  return LinearODE2(k(a), k(b), k(c));
}

LinearODE2 legendre(const Rational& n) { return LinearODE2(E(1) - E::x() * E::x(), E(-2) * E::x(), k(n * (n + 1))); }

LinearODE2 hermite(const Rational& n) { return LinearODE2(1, E(-2) * E::x(), k(2 * n)); }

LinearODE2 bessel(const Rational& n) { return LinearODE2(E::x() * E::x(), E::x(), E::x() * E::x() - k(n * n)); }

LinearODE2 laguerre(const Rational& n) { return LinearODE2(E::x(), E(1) - E::x(), k(n)); }

LinearODE2 chebyshev(const Rational& n) { return LinearODE2(E(1) - E::x() * E::x(), -E::x(), k(n * n)); }

LinearODE2 hypergeometric(const Rational& a, const Rational& b, const Rational& c) {
  return LinearODE2(E::x() * (E(1) - E::x()), k(c) - k(a + b + 1) * E::x(), k(-a * b));
}

LinearODE2 self_inverse_constant(const Rational& n) { return LinearODE2(1, 0, k(-n * n)); }

LinearODE2 self_inverse_chebyshev(const Rational& p0, const Rational& h0) {
  return LinearODE2(k(p0) - E::x() * E::x(), -E::x(), k(h0));
}

LinearODE2 self_inverse_rational(const Rational& p0, const Rational& q0, const Rational& h0) {
  const Rational s = q0 / p0;
  return LinearODE2(E::x() * (E::x() - k(2 * s)), k(s), k(h0 / p0) * E::x() * E::x());
}

}  // namespace family
}  // namespace fdt
