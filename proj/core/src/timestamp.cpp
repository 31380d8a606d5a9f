#include "loadlm/timestamp.hpp"

#include <array>
#include <cstdio>

namespace loadlm {

namespace {

bool digits_at(std::string_view text, std::size_t pos, std::size_t count, unsigned& out) {
  unsigned v = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day, unsigned hour) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok() || hour > 23) return std::nullopt;
  return Timestamp{sys_days{ymd}} + hours{hour};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const auto hour = (ts - day_point).count();
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u %02lld:00", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hour));
  return std::string(buf.data());
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  // YYYY-MM-DD HH:MM
  if (text.size() != 16) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || text[10] != ' ' || text[13] != ':') return std::nullopt;
  unsigned year = 0, month = 0, day = 0, hour = 0, minute = 0;
  if (!digits_at(text, 0, 4, year) || !digits_at(text, 5, 2, month) || !digits_at(text, 8, 2, day) ||
      !digits_at(text, 11, 2, hour) || !digits_at(text, 14, 2, minute)) {
    return std::nullopt;
  }
  if (minute != 0) return std::nullopt;
  return make_timestamp(static_cast<int>(year), month, day, hour);
}

int month_index(Timestamp ts) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(ts)};
  return static_cast<int>(ymd.year()) * 12 + static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
}

}  // namespace loadlm
