#include "dcreg/error.hpp"

namespace dcreg {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::IncompatibleGrid: return "IncompatibleGrid";
    case ErrorCode::ImproperFunction: return "ImproperFunction";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InfiniteValueInSup: return "InfiniteValueInSup";
    case ErrorCode::ScaleOrder: return "ScaleOrder";
    case ErrorCode::UnsupportedKernel: return "UnsupportedKernel";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::SlopeRangeTooNarrow: return "SlopeRangeTooNarrow";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dcreg
