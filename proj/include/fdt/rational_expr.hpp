#pragma once

#include <array>
#include <optional>
#include <string>

#include "fdt/polynomial.hpp"

namespace fdt {

/// Ratio of polynomials in x, always held in canonical form:
/// gcd(num, den) = 1 and den is monic. Equality is structural on that form.
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RationalExpr(long c) : RationalExpr(Rational(c)) {}    // NOLINT
  RationalExpr(int c) : RationalExpr(Rational(c)) {}     // NOLINT
  RationalExpr(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  /// Throws Error(construction) on a zero denominator.
  RationalExpr(Polynomial num, Polynomial den);

  static RationalExpr x() { return RationalExpr(Polynomial::x()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant expression, nullopt when x appears.
  std::optional<Rational> constant_value() const;

  RationalExpr derivative() const;
  /// Throws LocatedError(pole) at roots of den.
  Rational evaluate(const Rational& x0) const;
  double evaluate(double x0) const;
  RationalExpr pow(int e) const;

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o);
  RationalExpr& operator-=(const RationalExpr& o);
  RationalExpr& operator*=(const RationalExpr& o);
  /// Throws Error(construction) when o is identically zero.
  RationalExpr& operator/=(const RationalExpr& o);
  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }
  friend RationalExpr operator-(RationalExpr a, const RationalExpr& b) { return a -= b; }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }
  friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "num" when den = 1, otherwise "(num)/(den)"; parses back to the same value.
  std::string str() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Canonical form of num/den.
RationalExpr normalize(const Polynomial& num, const Polynomial& den);

/// Coefficients (p, q, r) of p w'' + q w' + r w = 0.
using ExprTriple = std::array<RationalExpr, 3>;

/// True iff (q/p, r/p) agree. Throws Error(degenerate_ode) when either p is zero.
bool equal_up_to_factor(const ExprTriple& a, const ExprTriple& b);

/// Scales a triple by the lcm of its denominators and removes integer content so
/// that all three entries are coprime integer polynomials, p with positive leading
/// coefficient.
std::array<Polynomial, 3> clear_denominators(const ExprTriple& t);

}  // namespace fdt
