#include "trendlab/strategy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace trendlab {

const char* strategy_mode_name(StrategyMode m) {
  return m == StrategyMode::linear ? "linear" : "sign";
}

StrategyMode parse_strategy_mode(const std::string& name) {
  if (name == "linear") return StrategyMode::linear;
  if (name == "sign") return StrategyMode::sign;
  throw std::invalid_argument("unknown strategy mode '" + name +
                              "' (expected linear or sign)");
}

const char* sweep_statistic_name(SweepStatistic s) {
  return s == SweepStatistic::sharpe ? "sharpe" : "stddev";
}

namespace {

inline double apply_mode(double signal, double ret, StrategyMode mode) {
  if (mode == StrategyMode::linear) {
    return signal * ret;
  }
  if (signal > 0.0) return ret;
  if (signal < 0.0) return -ret;
  return 0.0;  // flat on an exact tie
}

void check_lookback(std::size_t length, int lookback) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be >= 1");
  }
  if (static_cast<std::size_t>(lookback) >= length) {
    throw std::invalid_argument("lookback " + std::to_string(lookback) +
                                " >= series length " + std::to_string(length));
  }
}

struct MeanStd {
  double mean;
  double std;  // population
};

MeanStd mean_and_std(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i];
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<double>(n))};
}

}  // namespace

SignalSeries moving_average_signal(const ReturnSeries& returns, int lookback) {
  check_lookback(returns.size(), lookback);
  const std::size_t n = returns.size();
  SignalSeries out;
  out.lookback = lookback;
  out.dates.reserve(n - lookback);
  out.values.reserve(n - lookback);
  for (std::size_t t = static_cast<std::size_t>(lookback); t < n; ++t) {
    double acc = 0.0;
    for (int i = 1; i <= lookback; ++i) acc += returns.values[t - i];
    out.dates.push_back(returns.dates[t]);
    out.values.push_back(acc / lookback);
  }
  return out;
}

ReturnSeries strategy_returns(const ReturnSeries& returns, int lookback,
                              StrategyMode mode) {
  check_lookback(returns.size(), lookback);
  const std::size_t n = returns.size();
  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(n - lookback);
  values.reserve(n - lookback);
  double window_sum = 0.0;
  for (int i = 0; i < lookback; ++i) window_sum += returns.values[i];
  for (std::size_t t = static_cast<std::size_t>(lookback); t < n; ++t) {
    const double signal = window_sum / lookback;
    dates.push_back(returns.dates[t]);
    values.push_back(apply_mode(signal, returns.values[t], mode));
    window_sum += returns.values[t] - returns.values[t - lookback];
  }
  return ReturnSeries::make(std::move(dates), std::move(values), ReturnKind::raw_log,
                            returns.period);
}

double realized_sharpe(const ReturnSeries& strategy_returns) {
  const std::size_t n = strategy_returns.size();
  if (n < 2) {
    throw std::invalid_argument("sharpe ratio needs at least two returns");
  }
  const MeanStd ms = mean_and_std(strategy_returns.values.data(), n);
  if (ms.std <= 0.0) {
    throw std::runtime_error("zero standard deviation: sharpe ratio undefined");
  }
  return ms.mean / ms.std;
}

std::vector<int> lookback_range(int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw std::invalid_argument("invalid lookback range [" + std::to_string(n_min) +
                                ", " + std::to_string(n_max) + "]");
  }
  std::vector<int> out(static_cast<std::size_t>(n_max - n_min + 1));
  std::iota(out.begin(), out.end(), n_min);
  return out;
}

SweepCurve sweep(const ReturnSeries& returns, const std::vector<int>& lookbacks,
                 StrategyMode mode, SweepStatistic statistic, double annualization) {
  if (lookbacks.empty()) {
    throw std::invalid_argument("empty lookback range");
  }
  for (std::size_t i = 0; i < lookbacks.size(); ++i) {
    if (lookbacks[i] < 1 || (i > 0 && lookbacks[i] <= lookbacks[i - 1])) {
      throw std::invalid_argument("lookbacks must be unique, ascending and >= 1");
    }
  }
  if (!(annualization > 0.0)) {
    throw std::invalid_argument("annualization factor must be > 0");
  }
  const std::size_t n = returns.size();
  const int max_n = lookbacks.back();
  if (n < static_cast<std::size_t>(max_n) + 2) {
    throw std::invalid_argument("series length " + std::to_string(n) +
                                " too short for max lookback " + std::to_string(max_n));
  }
  // Common evaluation window: strategy returns dated from index max_n on.
  const std::size_t start = static_cast<std::size_t>(max_n);
  const std::size_t window = n - start;

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + returns.values[i];

  SweepCurve curve;
  curve.lookbacks = lookbacks;
  curve.statistic = statistic;
  curve.annualization = annualization;
  curve.values.reserve(lookbacks.size());

  std::vector<double> r(window);
  for (int lb : lookbacks) {
    for (std::size_t t = start; t < n; ++t) {
      const double signal = (prefix[t] - prefix[t - lb]) / lb;
      r[t - start] = apply_mode(signal, returns.values[t], mode);
    }
    const MeanStd ms = mean_and_std(r.data(), window);
    if (statistic == SweepStatistic::sharpe) {
      if (ms.std <= 0.0) {
        throw std::runtime_error("zero standard deviation in sweep at lookback " +
                                 std::to_string(lb));
      }
      curve.values.push_back(annualization * ms.mean / ms.std);
    } else {
      curve.values.push_back(annualization * ms.std);
    }
  }
  return curve;
}

SweepCurve average_curves(const std::vector<SweepCurve>& curves) {
  if (curves.empty()) {
    throw std::invalid_argument("cannot average zero curves");
  }
  const SweepCurve& first = curves.front();
  for (const SweepCurve& c : curves) {
    if (c.lookbacks != first.lookbacks || c.statistic != first.statistic ||
        c.annualization != first.annualization) {
      throw std::invalid_argument("curves differ in lookback grid or statistic kind");
    }
  }
  SweepCurve out;
  out.lookbacks = first.lookbacks;
  out.statistic = first.statistic;
  out.annualization = first.annualization;
  const std::size_t m = first.size();
  const double count = static_cast<double>(curves.size());
  out.values.assign(m, 0.0);
  for (const SweepCurve& c : curves) {
    for (std::size_t i = 0; i < m; ++i) out.values[i] += c.values[i];
  }
  for (std::size_t i = 0; i < m; ++i) out.values[i] /= count;
  if (curves.size() > 1) {
    out.stderrs.assign(m, 0.0);
    for (const SweepCurve& c : curves) {
      for (std::size_t i = 0; i < m; ++i) {
        const double d = c.values[i] - out.values[i];
        out.stderrs[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      out.stderrs[i] = std::sqrt(out.stderrs[i] / count) / std::sqrt(count);
    }
  }
  return out;
}

}  // namespace trendlab
