#include "fdt/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "fdt/errors.hpp"

namespace fdt {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::parse, "empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::construction, "zero denominator in rational literal '" + text + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      throw Error(ErrorCode::parse, "malformed rational literal '" + text + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::parse, "malformed rational literal '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) {
  static const mpz_class limit = mpz_class(1) << 53;
  if (abs(q.get_num()) <= limit && q.get_den() <= limit) return q.get_num().get_d() / q.get_den().get_d();
  return q.get_d();
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) {
    coeffs_.push_back(c);
    coeffs_.back().canonicalize();
  }
  refresh_doubles();
}

Polynomial Polynomial::x() { return monomial(1, 1); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  refresh_doubles();
}

void Polynomial::refresh_doubles() {
  dcoeffs_.resize(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) dcoeffs_[k] = to_double(coeffs_[k]);
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::construction, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Rational Polynomial::evaluate(const Rational& x0) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x0 + *it;
  return acc;
}

double Polynomial::evaluate(double x0) const {
  double acc = 0.0;
  for (auto it = dcoeffs_.rbegin(); it != dcoeffs_.rend(); ++it) acc = acc * x0 + *it;
  return acc;
}

double Polynomial::magnitude(double x0) const {
  double acc = 0.0;
  double ax = std::abs(x0);
  for (auto it = dcoeffs_.rbegin(); it != dcoeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Rational Polynomial::content() const {
  if (coeffs_.empty()) return 1;
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return abs(r);
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) return {};
  Rational lead = coeffs_.back();
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c /= lead;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::construction, "polynomial division by zero");
  std::vector<Rational> rem(a.coeffs_);
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {Polynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(dq) + 1, Rational(0));
  const Rational& lb = b.leading();
  for (int k = dq; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + db)] / lb;
    quo[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  // Monic remainders keep coefficient growth in check over Q.
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> v(coeffs_);
  for (auto& c : v) c = -c;
  return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    refresh_doubles();
    return *this;
  }
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(v);
  trim();
  return *this;
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << rational_string(mag);
      continue;
    }
    if (mag != 1) out << rational_string(mag) << "*";
    out << "x";
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

}  // namespace fdt
