#include "trendlab/dates.hpp"

#include <array>
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace trendlab {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Date parse_date(std::string_view iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  char extra = 0;
  std::string buf(iso);
  if (std::sscanf(buf.c_str(), "%d-%u-%u%c", &y, &m, &d, &extra) != 3) {
    throw std::invalid_argument("malformed date '" + buf + "' (expected YYYY-MM-DD)");
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date '" + buf + "'");
  }
  return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::chrono::weekday date_weekday(Date d) {
  return std::chrono::weekday{d};
}

std::chrono::weekday parse_weekday(std::string_view name) {
  static constexpr std::array<const char*, 7> codes = {"sun", "mon", "tue", "wed",
                                                       "thu", "fri", "sat"};
  static constexpr std::array<const char*, 7> full = {
      "sunday", "monday", "tuesday", "wednesday", "thursday", "friday", "saturday"};
  const std::string n = lower(name);
  for (unsigned i = 0; i < 7; ++i) {
    if (n == codes[i] || n == full[i]) {
      return std::chrono::weekday{i};
    }
  }
  throw std::invalid_argument("unknown weekday '" + std::string(name) + "'");
}

std::string weekday_code(std::chrono::weekday wd) {
  static constexpr std::array<const char*, 7> codes = {"sun", "mon", "tue", "wed",
                                                       "thu", "fri", "sat"};
  return codes[wd.c_encoding()];
}

int date_year(Date d) {
  return static_cast<int>(std::chrono::year_month_day{d}.year());
}

}  // namespace trendlab
