#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdt/classifier.hpp"
#include "fdt/families.hpp"

namespace fdt {

enum class Verdict { concordant, discrepant, not_applicable };

/// "CONCORDANT", "DISCREPANT", "N/A"
std::string to_string(Verdict v);

/// Inversion image of one special-function family instance.
struct Table1Row {
  std::string family;
  ParamList params;
  ExprTriple original;  // cleared denominators
  ExprTriple computed;
  ExprTriple printed;
  /// "EXACT", "EXACT_UP_TO_B_SIGN" or "MISMATCH"
  std::string verdict;
};

struct Table1Report {
  std::vector<Table1Row> rows;
  std::vector<std::string> errata;
};

/// Inversion images for the seven families: n in {1, 2, 3}, a grid of
/// hypergeometric parameters, and constant coefficients with b != 0.
Table1Report regenerate_table1();

struct Table2Row {
  std::string family;
  ParamList params;
  Branch branch = Branch::beta0;
  std::optional<RationalExpr> computed;
  std::optional<RationalExpr> printed;
  Verdict verdict = Verdict::not_applicable;
  std::string reason;  // set for N/A rows
  /// beta1 rows: R1 from the Riccati pipeline, and its verdict against the printed entry.
  std::optional<RationalExpr> pipeline;
  std::optional<Verdict> pipeline_verdict;
};

struct Table2Summary {
  std::string family;
  Branch branch = Branch::beta0;
  Verdict verdict = Verdict::not_applicable;
  std::size_t applicable = 0;
  std::vector<std::string> concordant_at;           // parameter strings
  std::vector<std::string> pipeline_concordant_at;  // beta1 only
};

struct Table2Report {
  std::vector<Rational> probe;
  std::vector<Table2Row> rows;
  std::vector<Table2Summary> summaries;
  std::vector<std::string> errata;
};

/// R1 at alpha = 0 for seven families over the probe set {0, 1/2, 1, 2}, both branches.
Table2Report regenerate_table2();

std::string format_table2_text(const Table2Report& report);
std::string format_table1_text(const Table1Report& report);

/// alpha = 0 consistency of the appendix invariant for one equation.
struct AppendixCheck {
  std::string family;
  RationalExpr appendix;  // N1 / D1 as transcribed
  RationalExpr collapse;  // (4r^3 + (2q' - q^2) r^2 + (2r'' - 2qr') r - 3r'^2) / (4r)
  RationalExpr pipeline;  // invariant_beta1_via_mobius
  bool collapse_matches = false;
  bool pipeline_matches = false;
  /// appendix = r * pipeline
  bool pipeline_times_r_matches = false;
};

/// w'' + w = 0, Bessel n = 0 and Hermite n = 1.
std::vector<AppendixCheck> appendix_alpha0_crosscheck();

/// The alpha-independence identity of the beta = 0 invariant on a deterministic
/// sample of (alpha, q, r) triples. Returns the number of samples checked; throws
/// Error(construction) naming the first counterexample.
int check_beta0_shift_identity();

}  // namespace fdt
