#include "fdt/riccati_mobius.hpp"

#include <cmath>
#include <sstream>

#include "fdt/errors.hpp"
#include "fdt/numeric.hpp"

namespace fdt {

LinearODE2::LinearODE2(RationalExpr p, RationalExpr q, RationalExpr r)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {
  if (p_.is_zero()) throw Error(ErrorCode::degenerate_ode, "ODE with identically zero leading coefficient");
}

LinearODE2 LinearODE2::normalized() const { return LinearODE2(1, q_ / p_, r_ / p_); }

ScalarFn LinearODE2::q_over_p() const {
  RationalExpr e = q_ / p_;
  return [e](double x) { return e.evaluate(x); };
}

ScalarFn LinearODE2::r_over_p() const {
  RationalExpr e = r_ / p_;
  return [e](double x) { return e.evaluate(x); };
}

bool MobiusMap::is_constant() const {
  return alpha.is_constant() && beta.is_constant() && gamma.is_constant() && delta.is_constant();
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return {alpha * o.alpha + gamma * o.beta, beta * o.alpha + delta * o.beta, alpha * o.gamma + gamma * o.delta,
          beta * o.gamma + delta * o.delta};
}

MobiusMap MobiusChain::recompose() const {
  // y = b1 + a1 / (a2 z + b2) = (b1 a2 z + b1 b2 + a1) / (a2 z + b2)
  return {RationalExpr(Rational(b1 * a2)), RationalExpr(a2), RationalExpr(Rational(b1 * b2 + a1)), RationalExpr(b2)};
}

RiccatiEq ode_to_riccati(const LinearODE2& ode) { return {RationalExpr(-1), -(ode.q() / ode.p()), -(ode.r() / ode.p())}; }

namespace {

RationalExpr checked_determinant(const MobiusMap& m) {
  RationalExpr det = m.determinant();
  if (det.is_zero()) throw Error(ErrorCode::singular_map, "Mobius map with identically zero determinant");
  return det;
}

}  // namespace

RiccatiEq mobius_apply(const RiccatiEq& ric, const MobiusMap& m) {
  const RationalExpr det = checked_determinant(m);
  const auto& [a, b, g, d] = m;
  const RationalExpr da = a.derivative(), db = b.derivative(), dg = g.derivative(), dd = d.derivative();
  const auto& [F, G, H] = ric;
  RiccatiEq out;
  out.F = (F * a * a + G * a * b + H * b * b - (da * b - a * db)) / det;
  out.G = (RationalExpr(2) * F * a * g + G * (a * d + b * g) + RationalExpr(2) * H * b * d - (da * d - a * dd) -
           (dg * b - g * db)) /
          det;
  out.H = (F * g * g + G * g * d + H * d * d - (dg * d - g * dd)) / det;
  return out;
}

RiccatiEq mobius_apply_canonical(const LinearODE2& ode, const MobiusMap& m) {
  const RationalExpr det = checked_determinant(m);
  const auto& [a, b, g, d] = m;
  const RationalExpr qp = ode.q() / ode.p();
  const RationalExpr rp = ode.r() / ode.p();
  const RationalExpr da = a.derivative(), db = b.derivative(), dg = g.derivative(), dd = d.derivative();
  RiccatiEq out;
  out.F = -(a * a + a * b * qp + b * b * rp + (da * b - a * db)) / det;
  out.G = -(RationalExpr(2) * a * g + (a * d + b * g) * qp + RationalExpr(2) * b * d * rp + (da * d - a * dd) +
            (dg * b - g * db)) /
          det;
  out.H = -(g * g + g * d * qp + d * d * rp + (dg * d - g * dd)) / det;
  return out;
}

LinearODE2 riccati_to_ode(const RiccatiEq& ric) {
  if (ric.F.is_zero())
    throw Error(ErrorCode::reconstruction, "F vanishes identically; z = -u'/(F u) is undefined");
  return LinearODE2(1, -(ric.G + ric.F.derivative() / ric.F), ric.H * ric.F);
}

LinearODE2 conformal_transform(const LinearODE2& ode, const MobiusMap& m) {
  return riccati_to_ode(mobius_apply(ode_to_riccati(ode), m));
}

std::optional<double> find_zero_crossing(const Grid& grid, std::span<const double> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0.0 || !std::isfinite(s[i])) return grid.x(i);
    if (i + 1 < s.size() && std::signbit(s[i]) != std::signbit(s[i + 1]) && s[i + 1] != 0.0) {
      double x0 = grid.x(i), x1 = grid.x(i + 1);
      return x0 + (x1 - x0) * s[i] / (s[i] - s[i + 1]);
    }
  }
  return std::nullopt;
}

namespace {

std::vector<double> sample_on(const RationalExpr& e, const Grid& grid, const char* name) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      out[i] = e.evaluate(grid.x(i));
    } catch (const Error& err) {
      throw LocatedError(ErrorCode::grid, std::string(name) + " has a pole on the grid: " + err.what(), grid.x(i));
    }
  }
  return out;
}

}  // namespace

GridFn transport_solution(const MobiusMap& m, const GridFn& w, const RationalExpr& F) {
  const Grid& grid = w.grid();
  const std::size_t n = grid.size();
  const auto Fv = sample_on(F, grid, "F");
  const auto al = sample_on(m.alpha, grid, "alpha");
  const auto be = sample_on(m.beta, grid, "beta");
  const auto ga = sample_on(m.gamma, grid, "gamma");
  const auto de = sample_on(m.delta, grid, "delta");
  const auto& wv = w.values();
  const auto wp = w.derivative(1);

  std::vector<double> num(n), den(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    num[i] = ga[i] * wv[i] - de[i] * wp[i];
    den[i] = al[i] * wv[i] - be[i] * wp[i];
  }
  if (auto x = find_zero_crossing(grid, den)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "alpha w - beta w' changes sign near x = " << *x;
    throw LocatedError(ErrorCode::pole_crossing, msg.str(), *x);
  }
  for (std::size_t i = 0; i < n; ++i) g[i] = Fv[i] * num[i] / den[i];

  const auto integral = cumulative_simpson(g, grid.h());
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = std::exp(integral[i]);

  if (!w.has_analytic(1)) return GridFn(grid, std::move(u));

  // u' = g u, u'' = (g' + g^2) u.
  const auto dF = sample_on(F.derivative(), grid, "F'");
  const auto dal = sample_on(m.alpha.derivative(), grid, "alpha'");
  const auto dbe = sample_on(m.beta.derivative(), grid, "beta'");
  const auto dga = sample_on(m.gamma.derivative(), grid, "gamma'");
  const auto dde = sample_on(m.delta.derivative(), grid, "delta'");
  const auto wpp_v = w.derivative(2);
  std::vector<double> du(n), d2u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double wpp = wpp_v[i];
    const double dnum = dga[i] * wv[i] + ga[i] * wp[i] - dde[i] * wp[i] - de[i] * wpp;
    const double dden = dal[i] * wv[i] + al[i] * wp[i] - dbe[i] * wp[i] - be[i] * wpp;
    const double dg = dF[i] * num[i] / den[i] + Fv[i] * (dnum * den[i] - num[i] * dden) / (den[i] * den[i]);
    du[i] = g[i] * u[i];
    d2u[i] = (dg + g[i] * g[i]) * u[i];
  }
  return GridFn(grid, std::move(u), {std::move(du), std::move(d2u)});
}

GridFn transport_solution(const LinearODE2& ode, const MobiusMap& m, const GridFn& w) {
  return transport_solution(m, w, mobius_apply(ode_to_riccati(ode), m).F);
}

MobiusChain decompose_constant(const MobiusMap& m) {
  if (!m.is_constant()) throw Error(ErrorCode::construction, "decomposition needs a constant Mobius map");
  const Rational a = *m.alpha.constant_value();
  const Rational b = *m.beta.constant_value();
  const Rational g = *m.gamma.constant_value();
  const Rational d = *m.delta.constant_value();
  const Rational det = a * d - b * g;
  if (det == 0) throw Error(ErrorCode::singular_map, "Mobius map with zero determinant");
  if (b == 0) throw Error(ErrorCode::affine_only, "beta = 0: the map is affine and has no inversion step");
  return {Rational(-det / b), Rational(a / b), b, d};
}

bool inversion_invariance_check(const LinearODE2& ode) {
  return equal_up_to_factor(conformal_transform(ode, MobiusMap::inversion()).triple(), ode.triple());
}

}  // namespace fdt
