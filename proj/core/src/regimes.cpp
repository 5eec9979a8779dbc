#include "trendlab/regimes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trendlab::regimes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(1) segment line-fit costs from prefix sums over (x = index, y = log
// price).
class SegmentCost {
 public:
  explicit SegmentCost(const std::vector<double>& y) {
    const std::size_t n = y.size();
    sx_.assign(n + 1, 0.0);
    sy_.assign(n + 1, 0.0);
    sxx_.assign(n + 1, 0.0);
    sxy_.assign(n + 1, 0.0);
    syy_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i);
      sx_[i + 1] = sx_[i] + x;
      sy_[i + 1] = sy_[i] + y[i];
      sxx_[i + 1] = sxx_[i] + x * x;
      sxy_[i + 1] = sxy_[i] + x * y[i];
      syy_[i + 1] = syy_[i] + y[i] * y[i];
    }
  }

  struct Fit {
    double slope;
    double intercept;
    double sse;
  };

  // OLS line over indices [first, last], inclusive; needs >= 2 points.
  Fit fit(std::size_t first, std::size_t last) const {
    const double n = static_cast<double>(last - first + 1);
    const double sx = sx_[last + 1] - sx_[first];
    const double sy = sy_[last + 1] - sy_[first];
    const double sxx = sxx_[last + 1] - sxx_[first];
    const double sxy = sxy_[last + 1] - sxy_[first];
    const double syy = syy_[last + 1] - syy_[first];
    const double cxx = sxx - sx * sx / n;
    const double cxy = sxy - sx * sy / n;
    const double cyy = syy - sy * sy / n;
    const double slope = cxy / cxx;
    Fit f;
    f.slope = slope;
    f.intercept = (sy - slope * sx) / n;
    f.sse = std::max(cyy - slope * cxy, 0.0);
    return f;
  }

 private:
  std::vector<double> sx_, sy_, sxx_, sxy_, syy_;
};

struct DpTable {
  // best[k][j]: minimal SSE for points 0..j with exactly k breaks.
  std::vector<std::vector<double>> best;
  std::vector<std::vector<std::size_t>> arg;  // chosen last-segment start
};

DpTable run_dp(const SegmentCost& cost, std::size_t n, std::size_t min_segment,
               std::size_t max_breaks) {
  DpTable t;
  t.best.assign(max_breaks + 1, std::vector<double>(n, kInf));
  t.arg.assign(max_breaks + 1, std::vector<std::size_t>(n, 0));
  for (std::size_t j = min_segment - 1; j < n; ++j) {
    t.best[0][j] = cost.fit(0, j).sse;
  }
  for (std::size_t k = 1; k <= max_breaks; ++k) {
    for (std::size_t j = (k + 1) * min_segment - 1; j < n; ++j) {
      double best = kInf;
      std::size_t best_b = 0;
      // Last segment [b, j]; the prefix 0..b-1 holds k-1 breaks.
      const std::size_t b_min = k * min_segment;
      const std::size_t b_max = j + 1 - min_segment;
      for (std::size_t b = b_min; b <= b_max; ++b) {
        const double v = t.best[k - 1][b - 1] + cost.fit(b, j).sse;
        if (v < best) {
          best = v;
          best_b = b;
        }
      }
      t.best[k][j] = best;
      t.arg[k][j] = best_b;
    }
  }
  return t;
}

std::vector<std::size_t> backtrack(const DpTable& t, std::size_t n,
                                   std::size_t breaks) {
  std::vector<std::size_t> starts;  // segment starts, excluding 0
  std::size_t j = n - 1;
  for (std::size_t k = breaks; k >= 1; --k) {
    const std::size_t b = t.arg[k][j];
    starts.push_back(b);
    j = b - 1;
  }
  std::vector<std::size_t> out(starts.rbegin(), starts.rend());
  return out;
}

RegimePartition build_partition(const PriceSeries& monthly,
                                const SegmentCost& cost,
                                const std::vector<std::size_t>& starts) {
  RegimePartition p;
  const std::size_t n = monthly.size();
  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t s : starts) bounds.push_back(s);
  bounds.push_back(n);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Segment seg;
    seg.first = bounds[i];
    seg.last = bounds[i + 1] - 1;
    seg.start_date = monthly.dates[seg.first];
    seg.end_date = monthly.dates[seg.last];
    seg.span_begin_exclusive =
        seg.first == 0 ? monthly.dates.front() - std::chrono::days{366 * 200}
                       : monthly.dates[seg.first - 1];
    const auto fit = cost.fit(seg.first, seg.last);
    seg.slope = fit.slope;
    seg.intercept = fit.intercept;
    seg.sse = fit.sse;
    p.segments.push_back(seg);
  }
  p.breakpoints = starts;
  for (std::size_t s : starts) p.breakpoint_dates.push_back(monthly.dates[s]);
  return p;
}

std::vector<double> log_values(const PriceSeries& prices) {
  std::vector<double> y(prices.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::log(prices.values[i]);
  return y;
}

void check_feasible(const PriceSeries& monthly, int min_segment) {
  if (min_segment < 2) {
    throw std::invalid_argument("min_segment must be >= 2 points");
  }
  if (monthly.size() < 2 * static_cast<std::size_t>(min_segment)) {
    throw std::invalid_argument("series length " + std::to_string(monthly.size()) +
                                " infeasible for min_segment " +
                                std::to_string(min_segment));
  }
}

}  // namespace

RegimePartition segment_with_breaks(const PriceSeries& monthly_prices,
                                    int min_segment, int breaks) {
  check_feasible(monthly_prices, min_segment);
  if (breaks < 0) {
    throw std::invalid_argument("breaks must be >= 0");
  }
  const std::size_t n = monthly_prices.size();
  if ((static_cast<std::size_t>(breaks) + 1) * min_segment > n) {
    throw std::invalid_argument("too many breaks for the series length");
  }
  const SegmentCost cost(log_values(monthly_prices));
  const DpTable t =
      run_dp(cost, n, static_cast<std::size_t>(min_segment), static_cast<std::size_t>(breaks));
  const auto starts = backtrack(t, n, static_cast<std::size_t>(breaks));
  return build_partition(monthly_prices, cost, starts);
}

double partition_sse(const RegimePartition& partition) {
  double total = 0.0;
  for (const Segment& s : partition.segments) total += s.sse;
  return total;
}

RegimePartition detect_breakpoints(const PriceSeries& monthly_prices,
                                   int min_segment, int max_breaks) {
  check_feasible(monthly_prices, min_segment);
  if (max_breaks < 0) {
    throw std::invalid_argument("max_breaks must be >= 0");
  }
  const std::size_t n = monthly_prices.size();
  const std::size_t feasible_breaks = n / static_cast<std::size_t>(min_segment) - 1;
  const std::size_t k_max =
      std::min<std::size_t>(static_cast<std::size_t>(max_breaks), feasible_breaks);

  const SegmentCost cost(log_values(monthly_prices));
  const DpTable t = run_dp(cost, n, static_cast<std::size_t>(min_segment), k_max);

  // BIC over the number of breaks: k breaks carry 2(k+1) line parameters
  // plus k breakpoint positions.
  const double log_n = std::log(static_cast<double>(n));
  double best_bic = kInf;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double sse = t.best[k][n - 1];
    if (!(sse < kInf)) continue;
    const double fit_term =
        static_cast<double>(n) * std::log(std::max(sse, 1e-300) / static_cast<double>(n));
    const double penalty = (2.0 * (static_cast<double>(k) + 1.0) + static_cast<double>(k)) * log_n;
    const double bic = fit_term + penalty;
    if (bic < best_bic) {
      best_bic = bic;
      best_k = k;
    }
  }
  const auto starts = backtrack(t, n, best_k);
  return build_partition(monthly_prices, cost, starts);
}

RegimePartition filter_min_weeks(const RegimePartition& partition, int min_weeks) {
  if (min_weeks < 0) {
    throw std::invalid_argument("min_weeks must be >= 0");
  }
  RegimePartition out;
  out.breakpoints = partition.breakpoints;
  out.breakpoint_dates = partition.breakpoint_dates;
  out.length_filtered = true;
  for (const Segment& s : partition.segments) {
    const double weeks = static_cast<double>(days_between(s.start_date, s.end_date)) / 7.0;
    if (weeks >= static_cast<double>(min_weeks)) {
      out.segments.push_back(s);
    }
  }
  if (out.segments.empty()) {
    throw std::runtime_error("no regime spans at least " + std::to_string(min_weeks) +
                             " weeks");
  }
  return out;
}

namespace {

ReturnSeries slice_by_segment(const ReturnSeries& weekly, const Segment& seg) {
  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t i = 0; i < weekly.size(); ++i) {
    if (seg.contains(weekly.dates[i])) {
      dates.push_back(weekly.dates[i]);
      values.push_back(weekly.values[i]);
    }
  }
  return ReturnSeries::make(std::move(dates), std::move(values), weekly.kind,
                            weekly.period, weekly.norm_window);
}

ReturnSeries slice_by_date(const ReturnSeries& weekly, Date boundary, bool before) {
  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t i = 0; i < weekly.size(); ++i) {
    if (before == (weekly.dates[i] < boundary)) {
      dates.push_back(weekly.dates[i]);
      values.push_back(weekly.values[i]);
    }
  }
  return ReturnSeries::make(std::move(dates), std::move(values), weekly.kind,
                            weekly.period, weekly.norm_window);
}

double autocorr_at(const ReturnSeries& r, int lag) {
  const MomentEstimates m = estimate_moments(r, lag);
  return m.autocorr.back();
}

Date epoch_boundary(int epoch_year) {
  using namespace std::chrono;
  return sys_days{year{epoch_year} / January / 1};
}

Date segment_midpoint(const Segment& s) {
  return s.start_date + std::chrono::days{days_between(s.start_date, s.end_date) / 2};
}

}  // namespace

AutocorrByRegime regime_autocorrelations(const ReturnSeries& weekly,
                                         const RegimePartition& partition, int lag,
                                         int epoch_year) {
  if (lag < 1) {
    throw std::invalid_argument("lag must be >= 1");
  }
  AutocorrByRegime out;
  for (const Segment& seg : partition.segments) {
    const ReturnSeries slice = slice_by_segment(weekly, seg);
    if (slice.size() < static_cast<std::size_t>(lag) + 2) {
      throw std::invalid_argument("regime " + format_date(seg.start_date) + ".." +
                                  format_date(seg.end_date) + " has " +
                                  std::to_string(slice.size()) +
                                  " returns, fewer than lag + 2");
    }
    out.per_regime.push_back(autocorr_at(slice, lag));
  }
  const Date boundary = epoch_boundary(epoch_year);
  const ReturnSeries pre = slice_by_date(weekly, boundary, true);
  const ReturnSeries post = slice_by_date(weekly, boundary, false);
  if (pre.size() < static_cast<std::size_t>(lag) + 2 ||
      post.size() < static_cast<std::size_t>(lag) + 2) {
    throw std::invalid_argument("too little data on one side of the epoch year " +
                                std::to_string(epoch_year));
  }
  out.pre_epoch = autocorr_at(pre, lag);
  out.post_epoch = autocorr_at(post, lag);
  out.pre_count = pre.size();
  out.post_count = post.size();
  return out;
}

RegimeSweepResult regime_sweep(const ReturnSeries& weekly,
                               const RegimePartition& partition,
                               const std::vector<int>& lookbacks, StrategyMode mode,
                               std::optional<int> epoch_year) {
  if (lookbacks.empty()) {
    throw std::invalid_argument("empty lookback range");
  }
  RegimeSweepResult out;
  std::vector<SweepCurve> pre, post;
  for (const Segment& seg : partition.segments) {
    const ReturnSeries slice = slice_by_segment(weekly, seg);
    if (slice.size() < static_cast<std::size_t>(lookbacks.back()) + 2) {
      throw std::invalid_argument(
          "regime " + format_date(seg.start_date) + ".." + format_date(seg.end_date) +
          " is shorter than max lookback + 1 (" + std::to_string(slice.size()) +
          " weekly returns)");
    }
    SweepCurve curve = sweep(slice, lookbacks, mode, SweepStatistic::sharpe);
    if (epoch_year) {
      (segment_midpoint(seg) < epoch_boundary(*epoch_year) ? pre : post)
          .push_back(curve);
    }
    out.per_regime.push_back(std::move(curve));
  }
  out.average = average_curves(out.per_regime);
  if (epoch_year) {
    if (!pre.empty()) out.pre_epoch = average_curves(pre);
    if (!post.empty()) out.post_epoch = average_curves(post);
  }
  return out;
}

}  // namespace trendlab::regimes
