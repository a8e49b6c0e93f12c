#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fdt/rational_expr.hpp"

namespace fdt {

using ParamMap = std::map<std::string, Rational>;

/// Syntax tree for
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | 'x' | identifier | '(' expr ')' | '-' base
/// Unary minus applies to a whole factor, so -x^2 is -(x^2). The exponent may be a
/// signed integer literal or a parenthesized constant expression that evaluates
/// to an integer.
struct ExprAst {
  enum class Kind { number, variable, parameter, add, sub, mul, div, pow, neg };

  Kind kind = Kind::number;
  Rational value;         // number
  std::string name;       // parameter
  long exponent = 0;      // pow
  std::size_t position = 0;
  std::vector<ExprAst> children;
};

/// Throws ParseError with the offending position. Exponents that are not integers
/// are rejected here.
ExprAst parse_ast(std::string_view src);

/// Substitutes params and builds the canonical expression. Throws ParseError for an
/// unbound identifier or a division by an expression that vanishes identically.
RationalExpr lower(const ExprAst& ast, const ParamMap& params = {});

RationalExpr parse_expression(std::string_view src, const ParamMap& params = {});

/// "name=value" with an exact rational value.
std::pair<std::string, Rational> parse_param_binding(std::string_view text);

/// Splits on top-level commas (outside parentheses).
std::vector<std::string> split_top_level(std::string_view text);

}  // namespace fdt
