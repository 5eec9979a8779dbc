#pragma once

#include <optional>
#include <vector>

#include "trendlab/series.hpp"
#include "trendlab/strategy.hpp"

namespace trendlab::regimes {

// One approximately-constant-drift segment of the monthly log-price series,
// with its ordinary-least-squares line fit (log price vs observation index).
struct Segment {
  std::size_t first = 0;            // index range into the monthly series
  std::size_t last = 0;             // inclusive
  Date start_date{};                // date of the first month in the segment
  Date end_date{};                  // date of the last month in the segment
  Date span_begin_exclusive{};      // previous segment's end (open lower bound)
  double slope = 0.0;               // per month
  double intercept = 0.0;
  double sse = 0.0;

  std::size_t points() const { return last - first + 1; }
  // Weekly observations belong to the segment whose
  // (span_begin_exclusive, end_date] interval contains their date.
  bool contains(Date d) const { return span_begin_exclusive < d && d <= end_date; }
};

struct RegimePartition {
  std::vector<std::size_t> breakpoints;  // first index of each segment after the first
  std::vector<Date> breakpoint_dates;
  std::vector<Segment> segments;
  bool length_filtered = false;
};

// Exact dynamic-programming minimization of the total SSE of per-segment
// line fits to log price vs time, with every segment at least min_segment
// points long. The number of breaks is chosen by BIC over 0..max_breaks.
RegimePartition detect_breakpoints(const PriceSeries& monthly_prices,
                                   int min_segment, int max_breaks);

// Optimal segmentation with exactly `breaks` breakpoints (no BIC), exposed
// for selection diagnostics and oracle testing.
RegimePartition segment_with_breaks(const PriceSeries& monthly_prices,
                                    int min_segment, int breaks);

// Total SSE of the already-fitted segments.
double partition_sse(const RegimePartition& partition);

// Drops segments spanning fewer than min_weeks calendar weeks (date span /
// 7). Throws when nothing survives.
RegimePartition filter_min_weeks(const RegimePartition& partition, int min_weeks);

struct AutocorrByRegime {
  std::vector<double> per_regime;   // one value per retained segment
  double pre_epoch = 0.0;           // pooled estimate over all weeks before the epoch
  double post_epoch = 0.0;
  std::size_t pre_count = 0;        // weekly returns entering each pooled estimate
  std::size_t post_count = 0;
};

// Autocorrelation at `lag` computed within each regime independently, plus
// pooled estimates on the contiguous weekly sub-series before/after
// January 1 of epoch_year.
AutocorrByRegime regime_autocorrelations(const ReturnSeries& weekly,
                                         const RegimePartition& partition, int lag,
                                         int epoch_year = 1975);

struct RegimeSweepResult {
  SweepCurve average;                       // over all retained regimes
  std::optional<SweepCurve> pre_epoch;      // regimes with midpoint before the epoch
  std::optional<SweepCurve> post_epoch;
  std::vector<SweepCurve> per_regime;
};

// Applies the strategy strictly inside each regime (moving averages never
// cross a breakpoint) and averages the per-regime curves; optionally also
// grouped by epoch. Requires max lookback + 1 < every regime's weekly
// length.
RegimeSweepResult regime_sweep(const ReturnSeries& weekly,
                               const RegimePartition& partition,
                               const std::vector<int>& lookbacks, StrategyMode mode,
                               std::optional<int> epoch_year = std::nullopt);

}  // namespace trendlab::regimes
