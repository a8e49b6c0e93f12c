#include "fdt/tables.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "fdt/errors.hpp"

namespace fdt {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::concordant: return "CONCORDANT";
    case Verdict::discrepant: return "DISCREPANT";
    case Verdict::not_applicable: return "N/A";
  }
  return "N/A";
}

namespace {

using E = RationalExpr;

E k(const Rational& v) { return E(v); }

ExprTriple cleared(const ExprTriple& t) {
  const auto c = clear_denominators(t);
  return {E(c[0]), E(c[1]), E(c[2])};
}

std::string triple_string(const ExprTriple& t) { return "(" + t[0].str() + ", " + t[1].str() + ", " + t[2].str() + ")"; }

// Inversion table

struct Table1Case {
  std::string family;
  ParamList params;
  LinearODE2 ode;
  LinearODE2 printed;
};

std::vector<Table1Case> table1_cases() {
  const E x = E::x();
  std::vector<Table1Case> cases;
  for (int a : {1, 2})
    for (int b : {1, 3})
      for (const Rational& c : {Rational(2), Rational(-1, 2)}) {
        auto ode = family::constant_coefficients(a, b, c);
        cases.push_back({"Constant coefficients", {{"a", a}, {"b", b}, {"c", c}}, ode, ode});
      }
  for (int n : {1, 2, 3}) {
    const Rational nn(n);
    cases.push_back({"Legendre", {{"n", nn}}, family::legendre(nn), LinearODE2(E(1) - x * x, 0, k(nn * (nn + 1)))});
  }
  for (int n : {1, 2, 3}) {
    const Rational nn(n);
    cases.push_back({"Hermite", {{"n", nn}}, family::hermite(nn), LinearODE2(1, E(2) * x, k(2 * nn))});
  }
  for (int n : {1, 2, 3}) {
    const Rational nn(n);
    const E n2 = k(nn * nn);
    cases.push_back({"Bessel", {{"n", nn}}, family::bessel(nn),
                     LinearODE2(1, -(x * x + n2) / (x * (x * x - n2)), (x * x - n2) / (x * x))});
  }
  for (int n : {1, 2, 3}) {
    const Rational nn(n);
    cases.push_back({"Laguerre", {{"n", nn}}, family::laguerre(nn), LinearODE2(1, 1, k(nn) / x)});
  }
  for (int h : {1, 2, 3}) {
    auto ode = family::chebyshev(h);
    cases.push_back({"Chebyshev", {{"h", h}}, ode, ode});
  }
  const std::vector<Rational> hp{Rational(1, 2), Rational(1), Rational(2)};
  for (const auto& a : hp)
    for (const auto& b : hp)
      for (const auto& c : hp)
        cases.push_back({"Hypergeometric", {{"alpha", a}, {"beta", b}, {"gamma", c}}, family::hypergeometric(a, b, c),
                         LinearODE2(x * (E(1) - x), E(1) - k(c) + k(a + b - 1) * x, k(-a * b))});
  return cases;
}

// Invariant table

using PrintedFn = std::function<std::optional<E>(const std::vector<Rational>&)>;

struct Table2Family {
  std::string name;
  std::vector<std::string> param_names;
  std::function<LinearODE2(const std::vector<Rational>&)> ode;
  PrintedFn printed;
};

std::vector<Table2Family> table2_families() {
  const E x = E::x();
  std::vector<Table2Family> fams;
  fams.push_back({"Constant coefficients",
                  {"b", "c"},
                  [](const auto& p) { return family::constant_coefficients(1, p[0], p[1]); },
                  [](const auto& p) -> std::optional<E> { return k(p[1] - p[0] * p[0] / 4); }});
  fams.push_back({"Legendre",
                  {"n"},
                  [](const auto& p) { return family::legendre(p[0]); },
                  [x](const auto& p) -> std::optional<E> { return k(p[0] * (p[0] + 1)) / (E(1) - x * x); }});
  fams.push_back({"Hermite",
                  {"n"},
                  [](const auto& p) { return family::hermite(p[0]); },
                  [x](const auto& p) -> std::optional<E> { return -(x * x) + k(2 * p[0] - 1); }});
  fams.push_back({"Bessel",
                  {"n"},
                  [](const auto& p) { return family::bessel(p[0]); },
                  [x](const auto& p) -> std::optional<E> {
                    const Rational n2 = p[0] * p[0];
                    const E x2 = x * x;
                    const E num = x2 * (E(4) * x2 * x2 - E(3) * x2 * k(4 * n2 + 1) + k(2 * n2 * (6 * n2 - 5))) +
                                  k(n2 * n2 * (4 * n2 + 1));
                    const E den = E(4) * x2 * (x2 - k(n2)).pow(2);
                    return num / den;
                  }});
  fams.push_back({"Laguerre",
                  {"n"},
                  [](const auto& p) { return family::laguerre(p[0]); },
                  [x](const auto& p) -> std::optional<E> { return k(p[0]) / x - E(Rational(1, 4)); }});
  fams.push_back({"Chebyshev",
                  {"n"},
                  [](const auto& p) { return family::chebyshev(p[0]); },
                  [x](const auto& p) -> std::optional<E> {
                    const Rational n2 = p[0] * p[0];
                    if (n2 == 0) return std::nullopt;
                    return -(k(4 * n2 - 1) * x * x - k(2 * (1 + 2 * n2))) / (E(4) * (x * x - E(1)).pow(2) * k(n2 * n2));
                  }});
  fams.push_back({"Hypergeometric",
                  {"alpha", "beta", "gamma"},
                  [](const auto& p) { return family::hypergeometric(p[0], p[1], p[2]); },
                  [x](const auto& p) -> std::optional<E> {
                    const Rational &a = p[0], &b = p[1], &g = p[2];
                    const Rational amb = a - b;
                    const E num = k(1 - amb * amb) * x * x + E(2) * k((a + b + 1) * g - (2 * a + 1) * b - (1 + a)) * x +
                                  k(g * g - 1);
                    return num / (x * x * (x - E(1)).pow(2));
                  }});
  return fams;
}

void cartesian(std::size_t arity, const std::vector<Rational>& probe,
               const std::function<void(const std::vector<Rational>&)>& visit) {
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    std::vector<Rational> vals;
    for (auto i : idx) vals.push_back(probe[i]);
    visit(vals);
    std::size_t d = arity;
    while (d > 0) {
      --d;
      if (++idx[d] < probe.size()) break;
      idx[d] = 0;
      if (d == 0) return;
    }
    if (arity == 0) return;
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

Table1Report regenerate_table1() {
  Table1Report rep;
  std::map<std::string, std::pair<int, int>> flips;  // family -> (flip count, total)
  for (const auto& c : table1_cases()) {
    Table1Row row;
    row.family = c.family;
    row.params = c.params;
    row.original = cleared(c.ode.triple());
    const LinearODE2 image = conformal_transform(c.ode, MobiusMap::inversion());
    row.computed = cleared(image.triple());
    row.printed = cleared(c.printed.triple());
    if (equal_up_to_factor(image.triple(), c.printed.triple())) {
      row.verdict = "EXACT";
    } else {
      const auto& t = c.printed.triple();
      row.verdict = equal_up_to_factor(image.triple(), {t[0], -t[1], t[2]}) ? "EXACT_UP_TO_B_SIGN" : "MISMATCH";
    }
    auto& f = flips[c.family];
    f.second += 1;
    if (row.verdict != "EXACT") f.first += 1;
    rep.rows.push_back(std::move(row));
  }
  for (const auto& [fam, counts] : flips) {
    if (counts.first == 0) continue;
    std::ostringstream s;
    s << fam << ": printed image differs from the computed inversion image in " << counts.first << " of "
      << counts.second << " instances";
    for (const auto& row : rep.rows)
      if (row.family == fam && row.verdict != "EXACT") {
        s << "; e.g. " << param_string(row.params) << " printed " << triple_string(row.printed) << ", computed "
          << triple_string(row.computed) << " (" << row.verdict << ")";
        break;
      }
    rep.errata.push_back(s.str());
  }
  return rep;
}

Table2Report regenerate_table2() {
  Table2Report rep;
  rep.probe = {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  const E zero(0);
  for (const auto& fam : table2_families()) {
    Table2Summary s0, s1;
    s0.family = s1.family = fam.name;
    s1.branch = Branch::beta1_alpha_fixed;
    bool any_disc0 = false, any_disc1 = false;
    cartesian(fam.param_names.size(), rep.probe, [&](const std::vector<Rational>& vals) {
      ParamList params;
      for (std::size_t i = 0; i < vals.size(); ++i) params.emplace_back(fam.param_names[i], vals[i]);
      const std::string pstr = param_string(params);
      std::optional<E> printed;
      try {
        printed = fam.printed(vals);
      } catch (const Error&) {
        printed.reset();
      }
      const LinearODE2 ode = fam.ode(vals);

      Table2Row r0;
      r0.family = fam.name;
      r0.params = params;
      r0.printed = printed;
      r0.computed = invariant_beta0(ode).R1;
      if (!printed) {
        r0.reason = "printed entry undefined at these parameters";
      } else {
        r0.verdict = *r0.computed == *printed ? Verdict::concordant : Verdict::discrepant;
        ++s0.applicable;
        if (r0.verdict == Verdict::concordant) s0.concordant_at.push_back(pstr);
        else any_disc0 = true;
      }
      rep.rows.push_back(std::move(r0));

      Table2Row r1;
      r1.family = fam.name;
      r1.params = params;
      r1.branch = Branch::beta1_alpha_fixed;
      r1.printed = printed;
      try {
        r1.computed = invariant_beta1(ode, zero).R1;
      } catch (const Error& e) {
        r1.reason = e.what();
      }
      try {
        r1.pipeline = invariant_beta1_via_mobius(ode, zero);
      } catch (const Error&) {
        r1.pipeline.reset();
      }
      if (r1.computed && !printed) r1.reason = "printed entry undefined at these parameters";
      if (r1.computed && printed) {
        r1.verdict = *r1.computed == *printed ? Verdict::concordant : Verdict::discrepant;
        ++s1.applicable;
        if (r1.verdict == Verdict::concordant) s1.concordant_at.push_back(pstr);
        else any_disc1 = true;
      }
      if (r1.pipeline && printed) {
        r1.pipeline_verdict = *r1.pipeline == *printed ? Verdict::concordant : Verdict::discrepant;
        if (*r1.pipeline_verdict == Verdict::concordant) s1.pipeline_concordant_at.push_back(pstr);
      }
      rep.rows.push_back(std::move(r1));
    });
    s0.verdict = s0.applicable == 0 ? Verdict::not_applicable : any_disc0 ? Verdict::discrepant : Verdict::concordant;
    s1.verdict = s1.applicable == 0 ? Verdict::not_applicable : any_disc1 ? Verdict::discrepant : Verdict::concordant;
    rep.summaries.push_back(std::move(s0));
    rep.summaries.push_back(std::move(s1));
  }

  for (std::size_t i = 0; i + 1 < rep.summaries.size(); i += 2) {
    const auto& s0 = rep.summaries[i];
    const auto& s1 = rep.summaries[i + 1];
    if (s0.verdict == Verdict::concordant) continue;
    std::ostringstream s;
    s << s0.family << ": beta0 concordant at " << s0.concordant_at.size() << "/" << s0.applicable
      << " probes; beta1 concordant at " << s1.concordant_at.size() << "/" << s1.applicable
      << " probes (" << (s1.concordant_at.empty() ? "none" : join(s1.concordant_at, "; "))
      << "); beta1 via the Riccati pipeline concordant at " << s1.pipeline_concordant_at.size() << " probes ("
      << (s1.pipeline_concordant_at.empty() ? "none" : join(s1.pipeline_concordant_at, "; ")) << ")";
    rep.errata.push_back(s.str());
  }
  for (const auto& row : rep.rows)
    if (row.family == "Hermite" && row.branch == Branch::beta0 && row.verdict == Verdict::discrepant) {
      rep.errata.push_back("Hermite (" + param_string(row.params) + "): printed " + row.printed->str() +
                           ", beta0 invariant " + row.computed->str());
      break;
    }
  for (const auto& c : appendix_alpha0_crosscheck()) {
    std::ostringstream s;
    s << "appendix invariant at alpha=0 for " << c.family << ": transcription collapse "
      << (c.collapse_matches ? "matches" : "differs") << "; Riccati pipeline "
      << (c.pipeline_matches ? "matches" : "differs") << " (appendix = " << c.appendix.str()
      << ", pipeline = " << c.pipeline.str() << ", appendix = r * pipeline: "
      << (c.pipeline_times_r_matches ? "yes" : "no") << ")";
    rep.errata.push_back(s.str());
  }
  const int n = check_beta0_shift_identity();
  rep.errata.push_back("sign convention: r1 - q1^2/4 - q1'/2 = r - q^2/4 - q'/2 verified symbolically on " +
                       std::to_string(n) +
                       " (alpha, q, r) samples; r1 = q1^2/4 + q1'/2 + R1 is the same identity, so both forms agree");
  return rep;
}

std::vector<AppendixCheck> appendix_alpha0_crosscheck() {
  const std::vector<std::pair<std::string, LinearODE2>> cases{
      {"w'' + w = 0", LinearODE2(1, 0, 1)},
      {"Bessel n=0", family::bessel(0)},
      {"Hermite n=1", family::hermite(1)},
  };
  std::vector<AppendixCheck> out;
  for (const auto& [name, ode] : cases) {
    const LinearODE2 m = ode.normalized();
    const E &q = m.q(), &r = m.r();
    const E q1 = q.derivative(), r1 = r.derivative(), r2 = r1.derivative();
    AppendixCheck c;
    c.family = name;
    c.appendix = invariant_beta1(ode, 0).R1;
    c.collapse = (E(4) * r.pow(3) + (E(2) * q1 - q * q) * r * r + (E(2) * r2 - E(2) * q * r1) * r - E(3) * r1 * r1) /
                 (E(4) * r);
    c.pipeline = invariant_beta1_via_mobius(ode, 0);
    c.collapse_matches = c.appendix == c.collapse;
    c.pipeline_matches = c.appendix == c.pipeline;
    c.pipeline_times_r_matches = c.appendix == r * c.pipeline;
    out.push_back(std::move(c));
  }
  return out;
}

int check_beta0_shift_identity() {
  const E x = E::x();
  const std::vector<E> alphas{E(0), E(3), x, E(Rational(1, 2)) * x * x - E(1), E(1) / (x + E(2)), (x - E(1)) / (x * x + E(1))};
  const std::vector<std::pair<E, E>> pairs{
      {E(0), E(1)}, {E(1) / x, E(1) - E(Rational(1, 4)) / (x * x)}, {E(-2) * x, E(4)}, {x * x - E(3), E(2) * x + E(1) / x}};
  int count = 0;
  for (const auto& a : alphas)
    for (const auto& [q, r] : pairs) {
      const auto [qs, rs] = beta0_shift(q, r, a);
      const E lhs = rs - qs * qs / E(4) - qs.derivative() / E(2);
      const E rhs = r - q * q / E(4) - q.derivative() / E(2);
      if (lhs != rhs)
        throw Error(ErrorCode::construction, "shift identity fails for alpha = " + a.str() + ", q = " + q.str());
      ++count;
    }
  return count;
}

std::string format_table1_text(const Table1Report& report) {
  std::ostringstream s;
  for (const auto& row : report.rows)
    s << row.family << " [" << param_string(row.params) << "]  " << triple_string(row.original) << " -> "
      << triple_string(row.computed) << "  printed " << triple_string(row.printed) << "  " << row.verdict << "\n";
  for (const auto& e : report.errata) s << "errata: " << e << "\n";
  return s.str();
}

std::string format_table2_text(const Table2Report& report) {
  std::ostringstream s;
  for (const auto& row : report.rows) {
    s << row.family << " [" << param_string(row.params) << "] " << to_string(row.branch) << "  computed "
      << (row.computed ? row.computed->str() : "-") << "  printed " << (row.printed ? row.printed->str() : "-") << "  "
      << to_string(row.verdict);
    if (!row.reason.empty()) s << " (" << row.reason << ")";
    if (row.pipeline)
      s << "  pipeline " << row.pipeline->str() << " "
        << to_string(row.pipeline_verdict.value_or(Verdict::not_applicable));
    s << "\n";
  }
  for (const auto& sm : report.summaries)
    s << "summary: " << sm.family << " " << to_string(sm.branch) << " " << to_string(sm.verdict) << " ("
      << sm.concordant_at.size() << "/" << sm.applicable << " concordant)\n";
  for (const auto& e : report.errata) s << "errata: " << e << "\n";
  return s.str();
}

}  // namespace fdt
