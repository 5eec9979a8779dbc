#pragma once

#include <string>
#include <vector>

#include "trendlab/series.hpp"

namespace trendlab {

// How the moving-average signal is turned into a position:
//   linear: position weight equals the trailing mean itself,
//   sign:   unit long/short on the sign of the trailing mean (flat on 0).
enum class StrategyMode { linear, sign };

const char* strategy_mode_name(StrategyMode m);
StrategyMode parse_strategy_mode(const std::string& name);

// Trailing means of the previous `lookback` returns. values[i] is the mean
// of the lookback returns strictly before dates[i], so a signal dated t
// never sees the return realized at t.
struct SignalSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  int lookback = 1;

  std::size_t size() const { return values.size(); }
};

enum class SweepStatistic { sharpe, stddev };

const char* sweep_statistic_name(SweepStatistic s);

// A statistic as a function of the look-back length N.
struct SweepCurve {
  std::vector<int> lookbacks;      // ascending, unique, >= 1
  std::vector<double> values;
  std::vector<double> stderrs;     // empty, or one entry per lookback
  SweepStatistic statistic = SweepStatistic::sharpe;
  double annualization = 1.0;      // factor already applied; 1 = per period

  std::size_t size() const { return values.size(); }
};

SignalSeries moving_average_signal(const ReturnSeries& returns, int lookback);

// Realized strategy returns: R_t = w(m_{t-1}) * X_t with w given by the
// mode. Output length is input length - lookback.
ReturnSeries strategy_returns(const ReturnSeries& returns, int lookback,
                              StrategyMode mode);

// Mean over population standard deviation, per period (zero risk-free
// rate). Throws on zero dispersion.
double realized_sharpe(const ReturnSeries& strategy_returns);

std::vector<int> lookback_range(int n_min, int n_max);

// Computes the statistic for every N in `lookbacks` over a common
// evaluation window: all N use strategy returns from index max(lookbacks)
// onward, so the curves are comparable across N. The annualization factor
// multiplies the per-period statistic (1 = leave per period).
SweepCurve sweep(const ReturnSeries& returns, const std::vector<int>& lookbacks,
                 StrategyMode mode, SweepStatistic statistic,
                 double annualization = 1.0);

// Pointwise mean of curves sharing a lookback grid and statistic kind.
// With two or more curves the standard error (pointwise std / sqrt(count))
// is filled in.
SweepCurve average_curves(const std::vector<SweepCurve>& curves);

}  // namespace trendlab
