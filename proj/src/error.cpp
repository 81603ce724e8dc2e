#include "polyapprox/error.hpp"

namespace polyapprox {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::DuplicateDirection: return "DuplicateDirection";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NonpositiveValue: return "NonpositiveValue";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::NotOuter: return "NotOuter";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace polyapprox
