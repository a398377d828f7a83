// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_TIMEUTIL_HPP_
#define JEER_TIMEUTIL_HPP_

#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace jeer {

// Timestamps are UTC seconds since the Unix epoch. All parsing and
// formatting is timezone-free by construction.
using UtcSeconds = std::int64_t;

inline constexpr UtcSeconds kMinTime = std::numeric_limits<UtcSeconds>::min();
inline constexpr UtcSeconds kMaxTime = std::numeric_limits<UtcSeconds>::max();

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

inline bool parse_fixed_uint(std::string_view s, size_t pos, size_t len, unsigned& out) {
  if (pos + len > s.size()) return false;
  unsigned v = 0;
  for (size_t i = pos; i < pos + len; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

// Accepts "YYYY-MM-DD" and "YYYY-MM-DD[T ]HH:MM:SS" with an optional
// trailing "Z". Anything else is rejected.
inline std::optional<UtcSeconds> parse_utc(std::string_view s) {
  unsigned year, month, day;
  if (!detail::parse_fixed_uint(s, 0, 4, year)) return std::nullopt;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!detail::parse_fixed_uint(s, 5, 2, month)) return std::nullopt;
  if (!detail::parse_fixed_uint(s, 8, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;

  unsigned hour = 0, minute = 0, second = 0;
  size_t rest = 10;
  if (s.size() > 10) {
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    if (s.size() < 19 || s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!detail::parse_fixed_uint(s, 11, 2, hour)) return std::nullopt;
    if (!detail::parse_fixed_uint(s, 14, 2, minute)) return std::nullopt;
    if (!detail::parse_fixed_uint(s, 17, 2, second)) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    rest = 19;
  }
  if (rest < s.size()) {
    if (!(rest + 1 == s.size() && s[rest] == 'Z')) return std::nullopt;
  }
  const std::int64_t days = detail::days_from_civil(year, month, day);
  return days * 86400 + hour * 3600 + minute * 60 + second;
}

inline std::string format_utc(UtcSeconds t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  std::int64_t year;
  unsigned month, day;
  detail::civil_from_days(days, year, month, day);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(year), month, day,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace jeer

#endif  // JEER_TIMEUTIL_HPP_
