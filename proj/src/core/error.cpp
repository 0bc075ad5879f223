#include "core/error.hpp"

namespace lsilab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NonPositiveTrace: return "NonPositiveTrace";
    case ErrorCode::NonPositiveSample: return "NonPositiveSample";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace lsilab
