#include "trendlab/series.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace trendlab {

const char* frequency_name(Frequency f) {
  switch (f) {
    case Frequency::daily: return "daily";
    case Frequency::weekly: return "weekly";
    case Frequency::monthly: return "monthly";
  }
  return "unknown";
}

namespace {

void check_dates_strictly_increasing(const std::vector<Date>& dates) {
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (!(dates[i - 1] < dates[i])) {
      throw std::invalid_argument("timestamps not strictly increasing at " +
                                  format_date(dates[i]));
    }
  }
}

}  // namespace

PriceSeries PriceSeries::make(std::vector<Date> dates, std::vector<double> values,
                              Frequency frequency,
                              std::optional<std::chrono::weekday> anchor) {
  if (dates.size() != values.size()) {
    throw std::invalid_argument("price series: dates and values differ in length");
  }
  check_dates_strictly_increasing(dates);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("non-positive price at " + format_date(dates[i]));
    }
  }
  PriceSeries out;
  out.dates = std::move(dates);
  out.values = std::move(values);
  out.frequency = frequency;
  out.anchor = anchor;
  return out;
}

ReturnSeries ReturnSeries::make(std::vector<Date> dates, std::vector<double> values,
                                ReturnKind kind, Frequency period,
                                std::optional<int> norm_window) {
  if (dates.size() != values.size()) {
    throw std::invalid_argument("return series: dates and values differ in length");
  }
  check_dates_strictly_increasing(dates);
  if (kind == ReturnKind::normalized) {
    if (!norm_window) {
      throw std::invalid_argument("normalized return series requires norm_window");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        throw std::invalid_argument("non-finite normalized return at " +
                                    format_date(dates[i]));
      }
    }
  }
  ReturnSeries out;
  out.dates = std::move(dates);
  out.values = std::move(values);
  out.kind = kind;
  out.period = period;
  out.norm_window = norm_window;
  return out;
}

ReturnSeries log_returns(const PriceSeries& prices) {
  if (prices.size() < 2) {
    throw std::invalid_argument("log returns need at least two prices");
  }
  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(prices.size() - 1);
  values.reserve(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    if (!(prices.values[i] > 0.0) || !(prices.values[i - 1] > 0.0)) {
      throw std::invalid_argument("non-positive price at " +
                                  format_date(prices.dates[i]));
    }
    dates.push_back(prices.dates[i]);
    values.push_back(std::log(prices.values[i] / prices.values[i - 1]));
  }
  return ReturnSeries::make(std::move(dates), std::move(values), ReturnKind::raw_log,
                            prices.frequency);
}

ReturnSeries log_returns(const PriceSeries& prices, int max_span_days) {
  if (max_span_days < 1) {
    throw std::invalid_argument("max_span_days must be >= 1");
  }
  if (prices.size() < 2) {
    throw std::invalid_argument("log returns need at least two prices");
  }
  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t i = 1; i < prices.size(); ++i) {
    if (days_between(prices.dates[i - 1], prices.dates[i]) > max_span_days) {
      continue;
    }
    dates.push_back(prices.dates[i]);
    values.push_back(std::log(prices.values[i] / prices.values[i - 1]));
  }
  if (dates.empty()) {
    throw std::invalid_argument("all returns exceed the maximum span of " +
                                std::to_string(max_span_days) + " days");
  }
  return ReturnSeries::make(std::move(dates), std::move(values), ReturnKind::raw_log,
                            prices.frequency);
}

ReturnSeries normalize_returns(const ReturnSeries& returns, int window) {
  if (returns.kind != ReturnKind::raw_log) {
    throw std::invalid_argument("normalize_returns expects raw log returns");
  }
  if (window < 1) {
    throw std::invalid_argument("normalization window must be >= 1");
  }
  const std::size_t n = returns.size();
  if (n <= static_cast<std::size_t>(window)) {
    throw std::invalid_argument("normalization window " + std::to_string(window) +
                                " leaves no data (series length " + std::to_string(n) +
                                ")");
  }
  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(n - window);
  values.reserve(n - window);
  for (std::size_t t = static_cast<std::size_t>(window); t < n; ++t) {
    double acc = 0.0;
    for (int i = 1; i <= window; ++i) {
      acc += std::fabs(returns.values[t - i]);
    }
    const double denom = acc / window;
    if (denom <= 0.0) {
      throw std::runtime_error("degenerate normalization denominator at " +
                               format_date(returns.dates[t]) +
                               " (window of all-zero returns)");
    }
    dates.push_back(returns.dates[t]);
    values.push_back(returns.values[t] / denom);
  }
  return ReturnSeries::make(std::move(dates), std::move(values), ReturnKind::normalized,
                            returns.period, window);
}

PriceSeries resample_weekly(const PriceSeries& prices, std::chrono::weekday anchor) {
  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (date_weekday(prices.dates[i]) == anchor) {
      dates.push_back(prices.dates[i]);
      values.push_back(prices.values[i]);
    }
  }
  if (dates.empty()) {
    throw std::invalid_argument("no observation falls on weekday '" +
                                weekday_code(anchor) + "'");
  }
  return PriceSeries::make(std::move(dates), std::move(values), Frequency::weekly,
                           anchor);
}

PriceSeries resample_monthly(const PriceSeries& prices) {
  if (prices.size() == 0) {
    throw std::invalid_argument("cannot resample an empty series");
  }
  std::vector<Date> dates;
  std::vector<double> values;
  // Input dates are strictly increasing, so the last observation seen in a
  // (year, month) bucket is the last trading day of that month.
  std::optional<std::pair<int, unsigned>> current;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    std::chrono::year_month_day ymd{prices.dates[i]};
    std::pair<int, unsigned> key{static_cast<int>(ymd.year()),
                                 static_cast<unsigned>(ymd.month())};
    if (current && key == *current) {
      dates.back() = prices.dates[i];
      values.back() = prices.values[i];
    } else {
      dates.push_back(prices.dates[i]);
      values.push_back(prices.values[i]);
      current = key;
    }
  }
  return PriceSeries::make(std::move(dates), std::move(values), Frequency::monthly);
}

MomentEstimates estimate_moments(const ReturnSeries& returns, int max_lag) {
  if (max_lag < 0) {
    throw std::invalid_argument("max_lag must be >= 0");
  }
  const std::size_t n = returns.size();
  if (n <= static_cast<std::size_t>(max_lag) + 1) {
    throw std::invalid_argument("series length " + std::to_string(n) +
                                " too short for max_lag " + std::to_string(max_lag));
  }
  double sum = 0.0;
  for (double v : returns.values) sum += v;
  const double mean = sum / static_cast<double>(n);

  double ss = 0.0;
  for (double v : returns.values) {
    const double d = v - mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(n);

  MomentEstimates out;
  out.mean = mean;
  out.variance = variance;
  out.count = n;
  out.autocorr.reserve(max_lag);
  if (max_lag > 0 && ss <= 0.0) {
    throw std::runtime_error("zero variance: autocorrelation undefined");
  }
  for (int k = 1; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
      acc += (returns.values[t] - mean) * (returns.values[t - k] - mean);
    }
    out.autocorr.push_back(acc / ss);
  }
  return out;
}

}  // namespace trendlab
