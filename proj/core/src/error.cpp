#include "loadlm/error.hpp"

namespace loadlm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::NegativeConsumption: return "NegativeConsumption";
    case ErrorCode::NotHourly: return "NotHourly";
    case ErrorCode::NotChronological: return "NotChronological";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::BadNumber: return "BadNumber";
    case ErrorCode::NoNumber: return "NoNumber";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoWindows: return "NoWindows";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::Io: return "Io";
    case ErrorCode::HintOutsideTruth: return "HintOutsideTruth";
    case ErrorCode::ContextUnparseable: return "ContextUnparseable";
    case ErrorCode::ContextTooShort: return "ContextTooShort";
    case ErrorCode::PeriodNotCovered: return "PeriodNotCovered";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::BadResponse: return "BadResponse";
    case ErrorCode::BackendExhausted: return "BackendExhausted";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidTemplate:
      return ErrorCategory::Usage;
    case ErrorCode::HintOutsideTruth:
    case ErrorCode::ContextUnparseable:
    case ErrorCode::ContextTooShort:
    case ErrorCode::PeriodNotCovered:
    case ErrorCode::ScriptExhausted:
    case ErrorCode::Timeout:
    case ErrorCode::TransportError:
    case ErrorCode::BadResponse:
    case ErrorCode::BackendExhausted:
      return ErrorCategory::Backend;
    default:
      return ErrorCategory::Data;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace loadlm
