#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace fdt {

using Rational = mpq_class;

/// Parse "p/q", "p" or a finite decimal ("0.25") into an exact rational.
Rational parse_rational(const std::string& text);

/// Exact rational text: "p" for integers, "p/q" otherwise.
std::string rational_string(const Rational& q);

/// Nearest double when numerator and denominator are exact in binary64, else truncated.
double to_double(const Rational& q);

/// Dense univariate polynomial in x with exact rational coefficients.
/// coeffs()[k] multiplies x^k; the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT

  static Polynomial x();
  static Polynomial monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const;

  Polynomial derivative() const;
  Rational evaluate(const Rational& x0) const;
  double evaluate(double x0) const;
  /// Sum of |c_k| |x0|^k, the natural scale for cancellation tests.
  double magnitude(double x0) const;

  /// Positive rational c with p / c having coprime integer coefficients.
  Rational content() const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Expanded text, highest power first, e.g. "3/2*x^2 - x + 1".
  std::string str() const;

 private:
  void trim();
  void refresh_doubles();

  std::vector<Rational> coeffs_;
  std::vector<double> dcoeffs_;  // cached double images for grid evaluation
};

}  // namespace fdt
