#pragma once

#include <optional>
#include <vector>

#include "trendlab/dates.hpp"

namespace trendlab {

enum class Frequency { daily, weekly, monthly };

const char* frequency_name(Frequency f);

// Dated positive prices with strictly increasing timestamps.
struct PriceSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  Frequency frequency = Frequency::daily;
  // Set iff frequency == weekly: the weekday every observation falls on.
  std::optional<std::chrono::weekday> anchor;

  std::size_t size() const { return values.size(); }

  // Validates: equal lengths, strictly increasing dates, all values > 0.
  static PriceSeries make(std::vector<Date> dates, std::vector<double> values,
                          Frequency frequency,
                          std::optional<std::chrono::weekday> anchor = std::nullopt);
};

enum class ReturnKind { raw_log, normalized };

// Dated per-period returns. kind == normalized means every value has been
// divided by a trailing mean absolute return; norm_window records the
// window length used.
struct ReturnSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  ReturnKind kind = ReturnKind::raw_log;
  Frequency period = Frequency::weekly;
  std::optional<int> norm_window;

  std::size_t size() const { return values.size(); }

  static ReturnSeries make(std::vector<Date> dates, std::vector<double> values,
                           ReturnKind kind, Frequency period,
                           std::optional<int> norm_window = std::nullopt);
};

struct MomentEstimates {
  double mean = 0.0;
  double variance = 0.0;          // population (1/n) variance
  std::vector<double> autocorr;   // lags 1..max_lag
  std::size_t count = 0;
};

// r_t = ln(S_t / S_{t-1}), dated at the later price. Output length is
// input length - 1.
ReturnSeries log_returns(const PriceSeries& prices);

// Same, but drops any return whose two prices are more than max_span_days
// calendar days apart (trading halts, resampling gaps).
ReturnSeries log_returns(const PriceSeries& prices, int max_span_days);

// X_t <- X_t / ((1/window) * sum_{i=1..window} |X_{t-i}|). Uses only past
// data; the first `window` entries are dropped as warm-up. A window of
// all-zero returns raises an error naming the offending date.
ReturnSeries normalize_returns(const ReturnSeries& returns, int window);

// Keeps the close on the anchor weekday, one observation per calendar week;
// weeks without that weekday are skipped.
PriceSeries resample_weekly(const PriceSeries& prices, std::chrono::weekday anchor);

// Last trading day of each month.
PriceSeries resample_monthly(const PriceSeries& prices);

// Sample mean, population variance and autocorrelations for lags
// 1..max_lag, all with the global mean subtracted. Requires
// length > max_lag + 1.
MomentEstimates estimate_moments(const ReturnSeries& returns, int max_lag);

}  // namespace trendlab
