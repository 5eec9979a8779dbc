#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace trendlab {

// Calendar date at day resolution. sys_days keeps ordering and arithmetic
// cheap; conversion to year/month/day happens only at the edges.
using Date = std::chrono::sys_days;

// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed or
// impossible dates (e.g. 2020-02-30).
Date parse_date(std::string_view iso);

std::string format_date(Date d);

std::chrono::weekday date_weekday(Date d);

// Accepts "mon".."sun" as well as full weekday names, case-insensitive.
std::chrono::weekday parse_weekday(std::string_view name);

std::string weekday_code(std::chrono::weekday wd);

int date_year(Date d);

inline long days_between(Date a, Date b) {
  return (b - a).count();
}

}  // namespace trendlab
