#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdt {

/// Machine-readable error categories. The CLI surfaces these verbatim.
enum class ErrorCode {
  construction,      // zero denominator and similar invalid values
  pole,              // evaluation at a root of a denominator
  degenerate_ode,    // leading coefficient identically zero
  singular_map,      // Mobius determinant identically zero
  reconstruction,    // F identically zero, no way back to a linear ODE
  affine_only,       // constant map with beta = 0 has no inversion step
  pole_crossing,     // sign change of a denominator inside a grid window
  grid,              // malformed grid, dimension mismatch, pole on grid
  singular_branch,   // D1 identically zero in the beta = 1 classifier
  nonvanishing,      // seed function with a zero on the grid
  invalid_seed,      // seed residual above tolerance
  eigenvalue_mismatch,
  normalization,     // Mobius map with determinant != 1 where 1 is required
  oracle_inconclusive,
  conditioning,
  parse,
  io,
  usage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Abscissa attached to the failure, NaN when there is none.
  virtual double location() const noexcept { return std::numeric_limits<double>::quiet_NaN(); }

 private:
  ErrorCode code_;
};

/// Error that carries the abscissa where it was detected (poles, zero crossings).
class LocatedError : public Error {
 public:
  LocatedError(ErrorCode code, const std::string& what, double x) : Error(code, what), x_(x) {}
  double location() const noexcept override { return x_; }

 private:
  double x_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::parse, what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fdt
