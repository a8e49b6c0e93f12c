#pragma once

#include <cmath>
#include <initializer_list>
#include <random>
#include <string>

#include "doctest.h"
#include "fdt/parser.hpp"
#include "fdt/rational_expr.hpp"

namespace fdt::test {

using E = RationalExpr;

inline E P(const std::string& src, const ParamMap& params = {}) { return parse_expression(src, params); }

inline const E X = E::x();

/// Polynomial from integer coefficients, constant term first.
inline Polynomial poly(std::initializer_list<int> c) { return Polynomial(std::vector<Rational>(c.begin(), c.end())); }

/// Polynomial with small integer coefficients and degree <= max_degree.
inline Polynomial random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-3, 3);
  std::vector<Rational> c(deg(rng) + 1);
  for (auto& v : c) v = coef(rng);
  return Polynomial(c);
}

/// Rational expression with a nonzero denominator.
inline E random_expr(std::mt19937& rng, int max_degree) {
  Polynomial den;
  do den = random_poly(rng, max_degree);
  while (den.is_zero());
  return E(random_poly(rng, max_degree), den);
}

}  // namespace fdt::test
