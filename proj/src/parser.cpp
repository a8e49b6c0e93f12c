#include "fdt/parser.hpp"

#include <cctype>

#include "fdt/errors.hpp"

namespace fdt {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprAst binary(ExprAst::Kind k, std::size_t pos, ExprAst lhs, ExprAst rhs) {
    ExprAst n;
    n.kind = k;
    n.position = pos;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  ExprAst expr() {
    ExprAst lhs = term();
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (accept('+')) lhs = binary(ExprAst::Kind::add, at, std::move(lhs), term());
      else if (accept('-')) lhs = binary(ExprAst::Kind::sub, at, std::move(lhs), term());
      else return lhs;
    }
  }

  ExprAst term() {
    ExprAst lhs = factor();
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (accept('*')) lhs = binary(ExprAst::Kind::mul, at, std::move(lhs), factor());
      else if (accept('/')) lhs = binary(ExprAst::Kind::div, at, std::move(lhs), factor());
      else return lhs;
    }
  }

  ExprAst factor() {
    ExprAst b = base();
    skip();
    const std::size_t at = pos_;
    if (!accept('^')) return b;
    ExprAst n;
    n.kind = ExprAst::Kind::pow;
    n.position = at;
    n.exponent = exponent();
    n.children.push_back(std::move(b));
    return n;
  }

  long exponent() {
    skip();
    const std::size_t at = pos_;
    Rational e;
    if (accept('(')) {
      const ExprAst inner = expr();
      if (!accept(')')) fail("expected ')'");
      RationalExpr v;
      try {
        v = lower(inner);
      } catch (const ParseError&) {
        throw ParseError("non-integer exponent", at);
      }
      if (!v.is_constant()) throw ParseError("non-integer exponent", at);
      e = *v.constant_value();
    } else {
      bool negative = accept('-');
      skip();
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      if (pos_ < src_.size() && (src_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(src_[pos_]))))
        throw ParseError("non-integer exponent", at);
      e = Rational(mpz_class(std::string(src_.substr(start, pos_ - start)), 10));
      if (negative) e = -e;
    }
    if (e.get_den() != 1) throw ParseError("non-integer exponent", at);
    if (!e.get_num().fits_slong_p() || abs(e.get_num()) > 4096) throw ParseError("exponent out of range", at);
    return e.get_num().get_si();
  }

  ExprAst base() {
    skip();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (accept('(')) {
      ExprAst e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (accept('-')) {
      ExprAst n;
      n.kind = ExprAst::Kind::neg;
      n.position = at;
      n.children.push_back(factor());
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      ExprAst n;
      n.position = at;
      try {
        n.value = parse_rational(std::string(src_.substr(at, pos_ - at)));
      } catch (const Error&) {
        throw ParseError("malformed number", at);
      }
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      ExprAst n;
      n.position = at;
      n.name = std::string(src_.substr(at, pos_ - at));
      n.kind = n.name == "x" ? ExprAst::Kind::variable : ExprAst::Kind::parameter;
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

ExprAst parse_ast(std::string_view src) { return Parser(src).parse(); }

RationalExpr lower(const ExprAst& ast, const ParamMap& params) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::number: return RationalExpr(ast.value);
    case K::variable: return RationalExpr::x();
    case K::parameter: {
      auto it = params.find(ast.name);
      if (it == params.end()) throw ParseError("unknown identifier '" + ast.name + "'", ast.position);
      return RationalExpr(it->second);
    }
    case K::neg: return -lower(ast.children[0], params);
    case K::add: return lower(ast.children[0], params) + lower(ast.children[1], params);
    case K::sub: return lower(ast.children[0], params) - lower(ast.children[1], params);
    case K::mul: return lower(ast.children[0], params) * lower(ast.children[1], params);
    case K::div: {
      const RationalExpr d = lower(ast.children[1], params);
      if (d.is_zero()) throw ParseError("division by zero", ast.position);
      return lower(ast.children[0], params) / d;
    }
    case K::pow: {
      const RationalExpr b = lower(ast.children[0], params);
      if (b.is_zero() && ast.exponent < 0) throw ParseError("negative power of zero", ast.position);
      return b.pow(static_cast<int>(ast.exponent));
    }
  }
  throw ParseError("malformed expression tree", ast.position);
}

RationalExpr parse_expression(std::string_view src, const ParamMap& params) { return lower(parse_ast(src), params); }

std::pair<std::string, Rational> parse_param_binding(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ParseError("expected name=value", 0);
  std::string name(text.substr(0, eq));
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
  if (name == "x") throw ParseError("'x' is the independent variable and cannot be bound", 0);
  for (char ch : name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) throw ParseError("invalid parameter name", 0);
  const RationalExpr v = parse_expression(text.substr(eq + 1));
  if (!v.is_constant()) throw ParseError("parameter value must be a constant", eq + 1);
  return {name, *v.constant_value()};
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace fdt
