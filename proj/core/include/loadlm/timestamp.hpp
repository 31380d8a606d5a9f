#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace loadlm {

/// Hour-resolution wall-clock instant. No time-zone handling: values are
/// interpreted as local clock time of the metered site.
using Timestamp = std::chrono::sys_time<std::chrono::hours>;

inline constexpr std::chrono::hours kOneHour{1};

/// Builds a timestamp from calendar fields; nullopt if the date is invalid or hour > 23.
[[nodiscard]] std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day,
                                                      unsigned hour = 0);

/// Canonical text form `YYYY-MM-DD HH:00`.
[[nodiscard]] std::string format_timestamp(Timestamp ts);

/// Parses `YYYY-MM-DD HH:MM` with MM == 00. Anything else yields nullopt.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Calendar month containing `ts`, as year*12 + (month-1); monotone in time.
[[nodiscard]] int month_index(Timestamp ts);

}  // namespace loadlm
