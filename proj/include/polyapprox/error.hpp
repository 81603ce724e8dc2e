#pragma once

#include <stdexcept>
#include <string>

namespace polyapprox {

enum class ErrorCode {
  UnsupportedDimension,
  ZeroDirection,
  InvalidBody,
  StepTooLarge,
  DuplicateDirection,
  DecompositionFailure,
  Infeasible,
  Unbounded,
  NumericalFailure,
  NonpositiveValue,
  Degenerate,
  DomainError,
  OutOfRange,
  GridTooCoarse,
  InvalidGeometry,
  NotOuter,
  EvaluationFailure,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polyapprox
