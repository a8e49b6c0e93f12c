#include "fdt/rational_expr.hpp"

#include <cmath>
#include <sstream>

#include "fdt/errors.hpp"

namespace fdt {

RationalExpr normalize(const Polynomial& num, const Polynomial& den) { return RationalExpr(num, den); }

RationalExpr::RationalExpr(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::construction, "rational expression with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den.degree() > 0) {
    Polynomial g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
      num = Polynomial::divmod(num, g).first;
      den = Polynomial::divmod(den, g).first;
    }
  }
  Rational lead = den.leading();
  if (lead != 1) {
    Polynomial scale(Rational(1 / lead));
    num *= scale;
    den *= scale;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

std::optional<Rational> RationalExpr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.coeff(0) / den_.coeff(0);
}

RationalExpr RationalExpr::derivative() const {
  if (den_.degree() == 0) return RationalExpr(num_.derivative() * Polynomial(Rational(1 / den_.coeff(0))));
  return RationalExpr(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RationalExpr::evaluate(const Rational& x0) const {
  Rational d = den_.evaluate(x0);
  if (d == 0)
    throw LocatedError(ErrorCode::pole, "pole of " + str() + " at x = " + rational_string(x0), to_double(x0));
  return num_.evaluate(x0) / d;
}

double RationalExpr::evaluate(double x0) const {
  double d = den_.evaluate(x0);
  if (std::abs(d) <= 1e-13 * den_.magnitude(x0) && den_.degree() > 0) {
    // Near-cancellation; decide exactly whether x0 is a root.
    if (den_.evaluate(Rational(x0)) == 0) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "pole of " << str() << " at x = " << x0;
      throw LocatedError(ErrorCode::pole, msg.str(), x0);
    }
  }
  return num_.evaluate(x0) / d;
}

RationalExpr RationalExpr::pow(int e) const {
  if (e < 0) {
    if (is_zero()) throw Error(ErrorCode::construction, "negative power of zero");
    return RationalExpr(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
  }
  return RationalExpr(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -num_;
  return r;
}

RationalExpr& RationalExpr::operator+=(const RationalExpr& o) {
  if (den_ == o.den_) {
    *this = RationalExpr(num_ + o.num_, den_);
  } else {
    *this = RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  return *this;
}

RationalExpr& RationalExpr::operator-=(const RationalExpr& o) { return *this += -o; }

RationalExpr& RationalExpr::operator*=(const RationalExpr& o) {
  *this = RationalExpr(num_ * o.num_, den_ * o.den_);
  return *this;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& o) {
  if (o.is_zero()) throw Error(ErrorCode::construction, "division by the zero rational expression");
  *this = RationalExpr(num_ * o.den_, den_ * o.num_);
  return *this;
}

std::string RationalExpr::str() const {
  if (den_.degree() == 0) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

bool equal_up_to_factor(const ExprTriple& a, const ExprTriple& b) {
  if (a[0].is_zero() || b[0].is_zero())
    throw Error(ErrorCode::degenerate_ode, "ODE with identically zero leading coefficient");
  return a[1] / a[0] == b[1] / b[0] && a[2] / a[0] == b[2] / b[0];
}

std::array<Polynomial, 3> clear_denominators(const ExprTriple& t) {
  Polynomial l(1);
  for (const auto& e : t) {
    Polynomial g = Polynomial::gcd(l, e.den());
    l = Polynomial::divmod(l * e.den(), g).first;
  }
  std::array<Polynomial, 3> out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = t[k].num() * Polynomial::divmod(l, t[k].den()).first;

  mpz_class g = 0;
  mpz_class den_lcm = 1;
  for (const auto& p : out)
    for (const auto& c : p.coeffs()) {
      if (c == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
  if (g == 0) return out;
  Rational scale(den_lcm, g);
  scale.canonicalize();
  const Polynomial& lead_poly = !out[0].is_zero() ? out[0] : (!out[1].is_zero() ? out[1] : out[2]);
  if (lead_poly.leading() < 0) scale = -scale;
  for (auto& p : out) p *= Polynomial(scale);
  return out;
}

}  // namespace fdt
