#include "fdt/errors.hpp"

namespace fdt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::construction: return "construction";
    case ErrorCode::pole: return "pole";
    case ErrorCode::degenerate_ode: return "degenerate_ode";
    case ErrorCode::singular_map: return "singular_map";
    case ErrorCode::reconstruction: return "reconstruction";
    case ErrorCode::affine_only: return "affine_only";
    case ErrorCode::pole_crossing: return "pole_crossing";
    case ErrorCode::grid: return "grid";
    case ErrorCode::singular_branch: return "singular_branch";
    case ErrorCode::nonvanishing: return "nonvanishing_violation";
    case ErrorCode::invalid_seed: return "invalid_seed";
    case ErrorCode::eigenvalue_mismatch: return "eigenvalue_mismatch";
    case ErrorCode::normalization: return "normalization";
    case ErrorCode::oracle_inconclusive: return "oracle_inconclusive";
    case ErrorCode::conditioning: return "conditioning";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

}  // namespace fdt
