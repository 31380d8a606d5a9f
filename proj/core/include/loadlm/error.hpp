#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loadlm {

/// Every failure raised by the library carries one of these codes.
enum class ErrorCode {
  // usage / configuration
  InvalidArgument,
  InvalidTemplate,
  // data
  MalformedRow,
  DuplicateTimestamp,
  NegativeConsumption,
  NotHourly,
  NotChronological,
  GapTooLarge,
  InsufficientSpan,
  SeriesTooShort,
  NoMatch,
  BadTimestamp,
  BadNumber,
  NoNumber,
  LengthMismatch,
  EmptyInput,
  NoWindows,
  SingularSystem,
  EmptyReport,
  Io,
  // backend
  HintOutsideTruth,
  ContextUnparseable,
  ContextTooShort,
  PeriodNotCovered,
  ScriptExhausted,
  Timeout,
  TransportError,
  BadResponse,
  BackendExhausted,
};

enum class ErrorCategory { Usage, Data, Backend };

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;
[[nodiscard]] ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace loadlm
