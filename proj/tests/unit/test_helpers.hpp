#pragma once

#include <vector>

#include "trendlab/rng.hpp"
#include "trendlab/series.hpp"

namespace trendlab::testutil {

// Consecutive business-day (Mon-Fri) dates starting 2000-01-03.
inline std::vector<Date> business_days(std::size_t count,
                                       Date start = std::chrono::sys_days{
                                           std::chrono::year{2000} /
                                           std::chrono::January / 3}) {
  std::vector<Date> out;
  Date d = start;
  while (out.size() < count) {
    const auto wd = date_weekday(d).c_encoding();
    if (wd >= 1 && wd <= 5) out.push_back(d);
    d += std::chrono::days{1};
  }
  return out;
}

inline std::vector<Date> weekly_dates(std::size_t count,
                                      Date start = std::chrono::sys_days{
                                          std::chrono::year{2000} /
                                          std::chrono::January / 7}) {
  std::vector<Date> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = start + std::chrono::days{static_cast<long>(7 * i)};
  }
  return out;
}

inline PriceSeries daily_prices(std::vector<double> values) {
  auto dates = business_days(values.size());
  return PriceSeries::make(std::move(dates), std::move(values), Frequency::daily);
}

inline ReturnSeries weekly_returns(std::vector<double> values) {
  auto dates = weekly_dates(values.size());
  return ReturnSeries::make(std::move(dates), std::move(values), ReturnKind::raw_log,
                            Frequency::weekly);
}

inline ReturnSeries gaussian_returns(std::size_t length, double mean, double sigma,
                                     std::uint64_t seed,
                                     Date start = std::chrono::sys_days{
                                         std::chrono::year{2000} /
                                         std::chrono::January / 7}) {
  sim::Rng rng(seed);
  std::vector<double> values(length);
  for (auto& v : values) v = mean + sigma * rng.next_gaussian();
  return ReturnSeries::make(weekly_dates(length, start), std::move(values),
                            ReturnKind::raw_log, Frequency::weekly);
}

}  // namespace trendlab::testutil
