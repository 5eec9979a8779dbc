#include "trendlab/theory.hpp"

#include <cmath>
#include <string>

namespace trendlab::theory {

namespace {

// sum_{i=1..N} rho(i)
double lag_sum(const Params& p, int n) {
  double s = 0.0;
  const int top = std::min<int>(n, static_cast<int>(p.autocorr.size()));
  for (int i = 1; i <= top; ++i) s += p.autocorr[i - 1];
  return s;
}

// sum_{i,j=1..N, i != j} rho(|i-j|) = 2 sum_{k=1..N-1} (N-k) rho(k)
double cross_lag_sum(const Params& p, int n) {
  double s = 0.0;
  const int top = std::min<int>(n - 1, static_cast<int>(p.autocorr.size()));
  for (int k = 1; k <= top; ++k) s += (n - k) * p.autocorr[k - 1];
  return 2.0 * s;
}

}  // namespace

bool correlation_psd(const std::vector<double>& autocorr, int dim) {
  if (dim < 1) return false;
  auto rho = [&](int lag) -> double {
    if (lag == 0) return 1.0;
    if (static_cast<std::size_t>(lag) > autocorr.size()) return 0.0;
    return autocorr[static_cast<std::size_t>(lag) - 1];
  };
  // Levinson-Durbin on the autocorrelation sequence; the matrix is PSD iff
  // every reflection coefficient stays in [-1, 1] (equivalently every
  // prediction error variance stays non-negative).
  constexpr double tol = 1e-12;
  std::vector<double> a(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> a_prev(static_cast<std::size_t>(dim), 0.0);
  double err = 1.0;  // rho(0)
  for (int m = 1; m < dim; ++m) {
    double acc = rho(m);
    for (int i = 1; i < m; ++i) acc -= a_prev[i] * rho(m - i);
    if (err <= tol) {
      // Singular leading minor: PSD continuation only if the next
      // innovation is exactly zero too.
      if (std::fabs(acc) > tol) return false;
      continue;
    }
    const double k = acc / err;
    if (std::fabs(k) > 1.0 + tol) return false;
    a[m] = k;
    for (int i = 1; i < m; ++i) a[i] = a_prev[i] - k * a_prev[m - i];
    err *= (1.0 - k * k);
    if (err < -tol) return false;
    a_prev = a;
  }
  return true;
}

void validate(const Params& params, int lookback) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be >= 1");
  }
  if (!(params.variance > 0.0)) {
    throw std::invalid_argument("model variance must be > 0");
  }
  for (double r : params.autocorr) {
    if (!(std::fabs(r) < 1.0)) {
      throw std::invalid_argument("autocorrelation out of (-1, 1): " +
                                  std::to_string(r));
    }
  }
  if (!correlation_psd(params.autocorr, lookback + 1)) {
    throw std::invalid_argument(
        "autocorrelations do not form a positive semi-definite correlation "
        "matrix at dimension " +
        std::to_string(lookback + 1));
  }
}

double expected_return(const Params& params, int lookback) {
  validate(params, lookback);
  return params.drift * params.drift +
         params.variance / lookback * lag_sum(params, lookback);
}

double strategy_variance(const Params& params, int lookback) {
  validate(params, lookback);
  const double n = static_cast<double>(lookback);
  const double v = params.variance;
  const double mu2 = params.drift * params.drift;
  const double s1 = lag_sum(params, lookback);
  const double s2 = cross_lag_sum(params, lookback);
  const double var = (n * v * v + n * mu2 * v + n * n * mu2 * v +
                      v * v * (s1 * s1 + s2) + mu2 * v * (2.0 * n * s1 + s2)) /
                     (n * n);
  if (var < 0.0) {
    throw std::runtime_error(
        "negative strategy variance from inconsistent autocorrelations");
  }
  return var;
}

double sharpe(const Params& params, int lookback) {
  const double er = expected_return(params, lookback);
  const double var = strategy_variance(params, lookback);
  if (!(var > 0.0)) {
    throw std::runtime_error("non-positive strategy variance: sharpe undefined");
  }
  return er / std::sqrt(var);
}

double sr_drift_only(double drift, double variance, int lookback) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be >= 1");
  }
  if (!(variance > 0.0)) {
    throw std::invalid_argument("model variance must be > 0");
  }
  const double mu2 = drift * drift;
  const double n = static_cast<double>(lookback);
  return mu2 / std::sqrt(variance * mu2 + variance * variance / n +
                         mu2 * variance / n);
}

double sr_autocorr_only(const std::vector<double>& autocorr, int lookback) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be >= 1");
  }
  Params p;
  p.drift = 0.0;
  p.variance = 1.0;
  p.autocorr = autocorr;
  const double s1 = lag_sum(p, lookback);
  const double s2 = cross_lag_sum(p, lookback);
  return s1 / std::sqrt(static_cast<double>(lookback) + s1 * s1 + s2);
}

}  // namespace trendlab::theory
