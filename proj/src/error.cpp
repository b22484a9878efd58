#include "qsearch/error.hpp"

namespace qsearch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAPrimePower: return "NotAPrimePower";
    case ErrorCode::kFieldTooLarge: return "FieldTooLarge";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kInvalidElement: return "InvalidElement";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kWrongDimension: return "WrongDimension";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kPrecondition: return "PreconditionViolation";
    case ErrorCode::kRetriesExhausted: return "RetriesExhausted";
    case ErrorCode::kNotSeparating: return "NotSeparating";
    case ErrorCode::kUniquenessViolation: return "UniquenessViolation";
    case ErrorCode::kExhausted: return "Exhausted";
    case ErrorCode::kInconsistentOracle: return "InconsistentOracle";
    case ErrorCode::kBadAnnounce: return "BadAnnounce";
    case ErrorCode::kInternalInconsistency: return "InternalInconsistency";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qsearch
