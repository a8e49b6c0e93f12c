#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fdt/riccati_mobius.hpp"

namespace fdt {

/// Named parameter assignment, e.g. {{"n", 2}}.
using ParamList = std::vector<std::pair<std::string, Rational>>;

/// "n=1/2, b=3"
std::string param_string(const ParamList& params);

namespace family {

LinearODE2 constant_coefficients(const Rational& a, const Rational& b, const Rational& c);
LinearODE2 legendre(const Rational& n);
LinearODE2 hermite(const Rational& n);
LinearODE2 bessel(const Rational& n);
LinearODE2 laguerre(const Rational& n);
LinearODE2 chebyshev(const Rational& n);
/// x(1-x) w'' + [c - (a+b+1)x] w' - a b w = 0
LinearODE2 hypergeometric(const Rational& a, const Rational& b, const Rational& c);

/// w'' - n^2 w = 0
LinearODE2 self_inverse_constant(const Rational& n);
/// (p0 - x^2) w'' - x w' + h0 w = 0
LinearODE2 self_inverse_chebyshev(const Rational& p0, const Rational& h0);
/// x(x - 2 q0/p0) w'' + (q0/p0) w' + (h0/p0) x^2 w = 0
LinearODE2 self_inverse_rational(const Rational& p0, const Rational& q0, const Rational& h0);

}  // namespace family
}  // namespace fdt
