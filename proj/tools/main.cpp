#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fdt/errors.hpp"

using namespace fdt::cli;

namespace {

struct Subcommand {
  CLI::App* app;
  std::function<Json(const Options&)> run;
  std::function<std::string()> text;
};

void add_params(CLI::App* s, Options& o) {
  s->add_option("--param", o.params, "Parameter binding name=value (repeatable)");
}

void add_ode(CLI::App* s, Options& o) {
  s->add_option("--p", o.p, "Coefficient of w''")->capture_default_str();
  s->add_option("--q", o.q, "Coefficient of w'")->capture_default_str();
  s->add_option("--r", o.r, "Coefficient of w")->capture_default_str();
}

int emit(const Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal transformations of second-order linear ODEs, Darboux maps and Cole-Hopf checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "darboux 1.0.0");
  Options o;
  std::string out;
  app.add_option("--out", out, "Write the JSON document to a file");

  std::vector<Subcommand> subs;
  auto add = [&](const char* name, const char* help, std::function<Json(const Options&)> run,
                 std::function<std::string()> text = nullptr) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--out", out, "Write the JSON document to a file");
    add_params(s, o);
    subs.push_back({s, std::move(run), std::move(text)});
    return s;
  };

  auto* transform = add("transform", "Apply a Mobius map to p w'' + q w' + r w = 0", cmd_transform);
  add_ode(transform, o);
  transform->add_option("--map", o.map, "alpha,beta,gamma,delta")->capture_default_str();

  auto* transport = add("transport", "Carry a solution along a Mobius map", cmd_transport);
  add_ode(transport, o);
  transport->add_option("--map", o.map, "alpha,beta,gamma,delta")->capture_default_str();
  transport->add_option("--grid", o.grid, "a,b,n")->required();
  transport->add_option("--w", o.w, "Solution as an expression in x");
  transport->add_option("--w-csv", o.w_csv, "Solution samples x,value[,derivative]");
  transport->add_option("--ivp", o.ivp, "x0,w0,w0' for an RK4 solution");
  transport->add_option("--out-csv", o.out_csv, "Write the transported solution as CSV");

  auto* decompose = add("decompose", "Split a constant Mobius map into affine and inversion steps", cmd_decompose);
  decompose->add_option("--map", o.map, "alpha,beta,gamma,delta")->required();

  auto* classify = add("classify", "Decide equivalence of two equations", cmd_classify);
  classify->add_option("--branch", o.branch, "beta0 or beta1")->capture_default_str();
  classify->add_option("--eq1", o.eq1, "p,q,r")->required();
  classify->add_option("--eq2", o.eq2, "p,q,r");
  classify->add_option("--eq2-bessel-order", o.eq2_bessel_order, "Bessel order for the target");
  classify->add_option("--alpha", o.alpha, "alpha(x) for the beta1 branch")->capture_default_str();

  auto* invariant = add("invariant", "Invariants of one equation", cmd_invariant);
  add_ode(invariant, o);
  invariant->add_option("--eq", o.eq, "p,q,r (overrides --p/--q/--r)");
  invariant->add_option("--alpha", o.alpha, "alpha(x) for the beta1 branch")->capture_default_str();

  auto* table1 = add("table1", "Regenerate the inversion table", cmd_table1, text_table1);
  table1->add_flag("--text", o.text, "Plain-text rendering");

  auto* table2 = add("table2", "Regenerate the invariant table with verdicts", cmd_table2, text_table2);
  table2->add_flag("--text", o.text, "Plain-text rendering");
  table2->add_flag("--report", o.report, "Include per-probe rows and summaries (default)");

  auto* darboux = add("darboux", "Classical Darboux transformation", cmd_darboux);
  darboux->add_option("--u", o.u, "Potential u(x)")->capture_default_str();
  darboux->add_option("--lambda", o.lambda, "Spectral parameter")->capture_default_str();
  darboux->add_option("--seed", o.seed, "c,x0,value,slope")->required();
  darboux->add_option("--grid", o.grid, "a,b,n")->required();
  darboux->add_option("--phi", o.phi, "x0,value,slope for a solution at lambda");

  auto* frac = add("frac-darboux", "Fractional Darboux transformation from two seeds", cmd_frac_darboux);
  frac->add_option("--u", o.u, "Potential u(x)")->capture_default_str();
  frac->add_option("--c", o.c, "Shared seed eigenvalue")->capture_default_str();
  frac->add_option("--seed1", o.seed1, "x0,value,slope");
  frac->add_option("--seed2", o.seed2, "x0,value,slope");
  frac->add_option("--seed1-csv", o.seed1_csv, "Seed samples x,value[,derivative]");
  frac->add_option("--seed2-csv", o.seed2_csv, "Seed samples x,value[,derivative]");
  frac->add_option("--grid", o.grid, "a,b,n")->required();
  frac->add_option("--phi", o.phi, "x0,value,slope for a solution at c");

  auto* ch = add("cole-hopf", "Cole-Hopf suites on a manufactured heat solution", cmd_cole_hopf);
  ch->add_option("--suite", o.suite, "all, classic, generalized, variable or nonlinear")->capture_default_str();
  ch->add_option("--map", o.chmap, "A,B,C,D for the generalized suite")->capture_default_str();
  ch->add_option("--A", o.A, "A(x) for the variable and nonlinear suites")->capture_default_str();
  ch->add_option("--C", o.C, "C(x) for the variable and nonlinear suites")->capture_default_str();
  ch->add_option("--q", o.q, "q(x) for the nonlinear suite")->capture_default_str();
  ch->add_option("--r", o.r, "r(x) for the nonlinear suite")->capture_default_str();
  ch->add_option("--nu", o.nu, "Viscosity for the classic suite")->capture_default_str();
  ch->add_option("--levels", o.levels, "Refinement levels")->capture_default_str();

  add("verify", "Convergence checks of the numeric engines", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Subcommand* chosen = nullptr;
  for (const auto& s : subs)
    if (s.app->parsed()) chosen = &s;
  const std::string name = chosen->app->get_name();

  Json args = Json::array();
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  Json doc{{"command", name}, {"args", args}};

  try {
    if (o.text && chosen->text) {
      std::cout << chosen->text();
      return 0;
    }
    Json payload = chosen->run(o);
    Json warnings = Json::array();
    if (payload.contains("errata")) {
      for (const auto& w : payload["errata"]) warnings.push_back(w);
    }
    if (payload.contains("notes")) {
      for (const auto& w : payload["notes"]) warnings.push_back(w);
    }
    doc["status"] = "ok";
    doc["payload"] = std::move(payload);
    doc["warnings"] = std::move(warnings);
    return emit(doc, out);
  } catch (const UsageError& e) {
    std::cerr << name << ": " << e.message << "\n";
    return 2;
  } catch (const fdt::Error& e) {
    Json err{{"code", std::string(fdt::to_string(e.code()))}, {"message", e.what()}};
    if (!std::isnan(e.location())) err["x"] = e.location();
    doc["status"] = "error";
    doc["error"] = err;
    emit(doc, out);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 1;
  }
}
