#include <cmath>
#include <stdexcept>
#include <vector>

#include "trendlab/simulate.hpp"

namespace trendlab::sim {

namespace {

// Dickey-Fuller tau_mu 5% critical values (regression with constant, no
// trend), bracketed by effective sample size.
double critical_value(std::size_t n) {
  if (n < 50) return -2.99;
  if (n < 250) return -2.89;
  return -2.87;
}

// Ordinary least squares via normal equations; returns false when the
// system is numerically singular.
bool ols(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
         std::vector<double>& beta, std::vector<std::vector<double>>& xtx_inv,
         double& rss) {
  const std::size_t m = y.size();
  const std::size_t p = x[0].size();
  std::vector<std::vector<double>> a(p, std::vector<double>(2 * p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      xty[j] += x[i][j] * y[i];
      for (std::size_t k = j; k < p; ++k) a[j][k] += x[i][j] * x[i][k];
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < j; ++k) a[j][k] = a[k][j];
  }
  double scale = 0.0;
  for (std::size_t j = 0; j < p; ++j) scale = std::max(scale, std::fabs(a[j][j]));
  // Gauss-Jordan with partial pivoting on [A | I].
  for (std::size_t j = 0; j < p; ++j) a[j][p + j] = 1.0;
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < p; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) < 1e-12 * std::max(scale, 1.0)) return false;
    std::swap(a[col], a[pivot]);
    const double d = a[col][col];
    for (std::size_t k = 0; k < 2 * p; ++k) a[col][k] /= d;
    for (std::size_t row = 0; row < p; ++row) {
      if (row == col) continue;
      const double f = a[row][col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < 2 * p; ++k) a[row][k] -= f * a[col][k];
    }
  }
  xtx_inv.assign(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) xtx_inv[j][k] = a[j][p + k];
  }
  beta.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) beta[j] += xtx_inv[j][k] * xty[k];
  }
  rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) fit += x[i][j] * beta[j];
    const double e = y[i] - fit;
    rss += e * e;
  }
  return true;
}

}  // namespace

AdfResult adf_test(const ReturnSeries& returns, int max_lag) {
  if (max_lag < 0) {
    throw std::invalid_argument("max_lag must be >= 0");
  }
  const std::size_t n = returns.size();
  if (n < 25) {
    throw std::invalid_argument("ADF test needs at least 25 observations");
  }
  const std::size_t k = static_cast<std::size_t>(max_lag);
  if (n < k + 3) {
    throw std::invalid_argument("series too short for " + std::to_string(max_lag) +
                                " lagged differences");
  }
  const std::vector<double>& y = returns.values;
  std::vector<double> dy(n - 1);
  for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];

  // Delta y_t = alpha + gamma y_{t-1} + sum_i beta_i Delta y_{t-i} + e_t
  const std::size_t m = n - 1 - k;      // usable rows
  const std::size_t p = 2 + k;          // intercept, level, lagged diffs
  std::vector<std::vector<double>> x(m, std::vector<double>(p, 0.0));
  std::vector<double> z(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t t = i + k;  // index into dy
    z[i] = dy[t];
    x[i][0] = 1.0;
    x[i][1] = y[t];  // level y_{t-1} relative to dy[t] = y[t+1]-y[t]
    for (std::size_t j = 1; j <= k; ++j) x[i][1 + j] = dy[t - j];
  }

  std::vector<double> beta;
  std::vector<std::vector<double>> xtx_inv;
  double rss = 0.0;
  if (!ols(x, z, beta, xtx_inv, rss)) {
    throw std::runtime_error("degenerate ADF regression (collinear design)");
  }
  if (m <= p) {
    throw std::invalid_argument("not enough observations for the ADF regression");
  }
  double yscale = 0.0;
  for (double v : z) yscale += v * v;
  if (rss <= 1e-14 * std::max(yscale, 1e-300)) {
    throw std::runtime_error("degenerate ADF regression (perfect fit)");
  }
  const double s2 = rss / static_cast<double>(m - p);
  const double se = std::sqrt(s2 * xtx_inv[1][1]);
  if (!(se > 0.0)) {
    throw std::runtime_error("degenerate ADF regression (zero standard error)");
  }

  AdfResult out;
  out.statistic = beta[1] / se;
  out.sample_size = m;
  out.lags = max_lag;
  out.critical_value_5pct = critical_value(m);
  out.unit_root_rejected = out.statistic < out.critical_value_5pct;
  return out;
}

}  // namespace trendlab::sim
