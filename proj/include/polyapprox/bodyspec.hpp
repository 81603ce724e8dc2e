#pragma once

#include "polyapprox/body.hpp"
#include "polyapprox/error.hpp"

#include <string>
#include <string_view>

namespace polyapprox {

/// Parse failure with a 1-based source position.
class SpecParseError : public Error {
 public:
  SpecParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Body specification text:
///
///   # unit disc shifted right
///   kind = translate
///   shift = 1 0
///   inner {
///     kind = ball
///     center = 0 0
///     radius = 1
///   }
///
/// Kinds and keys:
///   ball               center, radius
///   ellipsoid          center, axes, [rotation] (row-major n x n)
///   power_cap          exponent
///   ball_intersection  radius, center (repeated)
///   minkowski_sum      left { }, right { }
///   translate          shift, inner { }
///   hpolytope          halfspace = p1 .. pn b (repeated)
///
/// Unknown, duplicate and missing keys are errors. Geometric validation
/// errors from the body constructors propagate unchanged.
ConvexBody parse_body_spec(std::string_view text);

/// Reads and parses a file; IoError if it cannot be read.
ConvexBody load_body_spec(const std::string& path);

}  // namespace polyapprox
