#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fdt::cli {

using Json = nlohmann::ordered_json;

/// Union of all subcommand flags; each subcommand binds the ones it uses.
struct Options {
  std::vector<std::string> params;  // name=value
  std::string p = "1", q = "0", r = "0";
  std::string map = "0,1,1,0";
  std::string grid;
  std::string w, w_csv, ivp;
  std::string out_csv;

  std::string branch = "beta0";
  std::string eq, eq1, eq2, eq2_bessel_order;
  std::string alpha = "0";

  bool report = false;
  bool text = false;

  std::string u = "0";
  std::string lambda = "0";
  std::string c = "1";
  std::string seed, seed1, seed2, seed1_csv, seed2_csv, phi;

  std::string suite = "all";
  std::string chmap = "0,1,1,0";
  std::string A = "0", C = "1";
  std::string nu = "1";
  int levels = 3;
};

/// Thrown for malformed flag values; the front end maps it to exit code 2.
struct UsageError {
  std::string message;
};

double tolerance_override(double fallback);

Json cmd_transform(const Options& o);
Json cmd_transport(const Options& o);
Json cmd_decompose(const Options& o);
Json cmd_classify(const Options& o);
Json cmd_invariant(const Options& o);
Json cmd_table1(const Options& o);
Json cmd_table2(const Options& o);
Json cmd_darboux(const Options& o);
Json cmd_frac_darboux(const Options& o);
Json cmd_cole_hopf(const Options& o);
Json cmd_verify(const Options& o);

/// Text renderings for --text.
std::string text_table1();
std::string text_table2();

}  // namespace fdt::cli
