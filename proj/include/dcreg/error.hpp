#pragma once

#include <stdexcept>
#include <string>

namespace dcreg {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidValue,
  InvalidGrid,
  IncompatibleGrid,
  ImproperFunction,
  DimensionMismatch,
  InfiniteValueInSup,
  ScaleOrder,
  UnsupportedKernel,
  VerificationFailure,
  PreconditionViolated,
  EmptySet,
  SlopeRangeTooNarrow,
  SyntaxError,
  UnknownIdentifier,
  ArityMismatch,
  EvaluationError,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dcreg
