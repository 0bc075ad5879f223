#pragma once

#include <stdexcept>
#include <string>

namespace lsilab {

// Error categories raised by the core. The C API maps each one onto a status
// code one-to-one.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  OutOfDomain,
  InsufficientCoverage,
  ZeroMass,
  DivergentIntegral,
  DegenerateSupport,
  SingularCovariance,
  UnsupportedDimension,
  UnsupportedRepresentation,
  NonPositiveInput,
  NonPositiveTrace,
  NonPositiveSample,
  RangeViolation,
  OutOfRange,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace lsilab
