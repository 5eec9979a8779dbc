#include "trendlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "trendlab/rng.hpp"

namespace trendlab::theory {

namespace {

constexpr double kHuge = 1e30;

// rho = tanh(u) keeps every autocorrelation strictly inside (-1, 1).
Params unpack(const std::vector<double>& theta, double variance) {
  Params p;
  p.drift = theta[0];
  p.variance = variance;
  p.autocorr.resize(theta.size() - 1);
  for (std::size_t i = 1; i < theta.size(); ++i) {
    p.autocorr[i - 1] = std::tanh(theta[i]);
  }
  return p;
}

// Residual vector; non-evaluable parameter sets (non-PSD correlation,
// non-positive variance) get a huge flat residual so the step is rejected.
bool residuals(const std::vector<double>& theta, double variance,
               const SweepCurve& curve, std::vector<double>& out) {
  const Params p = unpack(theta, variance);
  const int max_n = curve.lookbacks.back();
  if (!correlation_psd(p.autocorr, max_n + 1)) {
    std::fill(out.begin(), out.end(), kHuge);
    return false;
  }
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const int n = curve.lookbacks[j];
    const double er = p.drift * p.drift;
    double s1 = 0.0, s2 = 0.0;
    const int top = std::min<int>(n, static_cast<int>(p.autocorr.size()));
    for (int i = 1; i <= top; ++i) s1 += p.autocorr[i - 1];
    const int top2 = std::min<int>(n - 1, static_cast<int>(p.autocorr.size()));
    for (int k = 1; k <= top2; ++k) s2 += (n - k) * p.autocorr[k - 1];
    s2 *= 2.0;
    const double v = p.variance;
    const double mu2 = er;
    const double mean = mu2 + v / n * s1;
    const double var = (n * v * v + n * mu2 * v + double(n) * n * mu2 * v +
                        v * v * (s1 * s1 + s2) + mu2 * v * (2.0 * n * s1 + s2)) /
                       (double(n) * n);
    if (!(var > 0.0)) {
      std::fill(out.begin(), out.end(), kHuge);
      return false;
    }
    out[j] = mean / std::sqrt(var) - curve.values[j];
  }
  return true;
}

double cost_of(const std::vector<double>& r) {
  double c = 0.0;
  for (double v : r) c += v * v;
  return c;
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return true;
}

struct StartResult {
  std::vector<double> theta;
  double cost = kHuge;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

StartResult run_start(std::vector<double> theta, double variance,
                      const SweepCurve& curve, const FitOptions& opt) {
  const std::size_t np = theta.size();
  const std::size_t m = curve.size();
  std::vector<double> r(m), r_trial(m), r_hi(m), r_lo(m);

  StartResult res;
  if (!residuals(theta, variance, curve, r)) {
    res.theta = theta;
    return res;
  }
  double cost = cost_of(r);
  res.history.push_back(std::sqrt(cost));

  double lambda = 1e-3;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    // Numeric Jacobian, central differences.
    std::vector<std::vector<double>> jac(m, std::vector<double>(np));
    for (std::size_t k = 0; k < np; ++k) {
      const double h = 1e-6 * std::max(1.0, std::fabs(theta[k]));
      std::vector<double> t = theta;
      t[k] = theta[k] + h;
      const bool ok_hi = residuals(t, variance, curve, r_hi);
      t[k] = theta[k] - h;
      const bool ok_lo = residuals(t, variance, curve, r_lo);
      if (!ok_hi || !ok_lo) {
        for (std::size_t j = 0; j < m; ++j) jac[j][k] = 0.0;
        continue;
      }
      for (std::size_t j = 0; j < m; ++j) jac[j][k] = (r_hi[j] - r_lo[j]) / (2 * h);
    }
    std::vector<std::vector<double>> h(np, std::vector<double>(np, 0.0));
    std::vector<double> g(np, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t a = 0; a < np; ++a) {
        g[a] += jac[j][a] * r[j];
        for (std::size_t b = a; b < np; ++b) h[a][b] += jac[j][a] * jac[j][b];
      }
    }
    for (std::size_t a = 0; a < np; ++a) {
      for (std::size_t b = 0; b < a; ++b) h[a][b] = h[b][a];
    }
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::fabs(v));
    if (gmax < 1e-14) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    for (int inner = 0; inner < 25; ++inner) {
      auto damped = h;
      for (std::size_t a = 0; a < np; ++a) {
        damped[a][a] += lambda * std::max(h[a][a], 1e-12);
      }
      std::vector<double> neg_g(np), step;
      for (std::size_t a = 0; a < np; ++a) neg_g[a] = -g[a];
      if (!solve_linear(damped, neg_g, step)) {
        lambda *= 10.0;
        continue;
      }
      std::vector<double> trial = theta;
      for (std::size_t a = 0; a < np; ++a) trial[a] += step[a];
      if (!residuals(trial, variance, curve, r_trial)) {
        lambda *= 10.0;
        continue;
      }
      const double trial_cost = cost_of(r_trial);
      if (trial_cost < cost) {
        const double rel_drop = (cost - trial_cost) / std::max(cost, 1e-300);
        theta = trial;
        r = r_trial;
        cost = trial_cost;
        res.history.push_back(std::sqrt(cost));
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (rel_drop < opt.tolerance || cost < 1e-24) {
          res.converged = true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted || res.converged) {
      if (!accepted) res.converged = true;  // no improving step left
      break;
    }
  }
  res.theta = theta;
  res.cost = cost;
  res.iterations = iter + 1;
  return res;
}

}  // namespace

FitResult fit_params(const SweepCurve& empirical, double variance,
                     const FitOptions& options) {
  if (empirical.statistic != SweepStatistic::sharpe) {
    throw std::invalid_argument("fit expects a sharpe-ratio curve");
  }
  if (!(variance > 0.0)) {
    throw std::invalid_argument("fixed variance must be > 0");
  }
  if (options.lags < 1) {
    throw std::invalid_argument("fit needs at least one autocorrelation lag");
  }
  if (empirical.size() < static_cast<std::size_t>(options.lags) + 1) {
    throw std::invalid_argument("curve has fewer points than parameters + 1");
  }
  const std::size_t np = static_cast<std::size_t>(options.lags) + 1;

  double ymax = 0.0;
  for (double v : empirical.values) ymax = std::max(ymax, std::fabs(v));
  const double drift_scale = std::max(ymax, 1e-3) * std::sqrt(variance);

  const int starts = std::max(options.starts, 1);
  // Starts are independent; run them concurrently and merge in index order
  // so the winner is deterministic for a given seed.
  std::vector<std::future<StartResult>> jobs;
  jobs.reserve(static_cast<std::size_t>(starts));
  for (int s = 0; s < starts; ++s) {
    jobs.push_back(std::async(std::launch::async, [&, s] {
      sim::Rng rng(options.seed, static_cast<std::uint64_t>(s));
      std::vector<double> theta(np, 0.0);
      if (s == 0) {
        theta[0] = drift_scale;  // deterministic start near the case-I scale
      } else {
        theta[0] = drift_scale * (2.0 * rng.next_double() - 1.0) * 1.5;
        for (std::size_t k = 1; k < np; ++k) {
          theta[k] = 0.2 * (2.0 * rng.next_double() - 1.0);
        }
      }
      return run_start(std::move(theta), variance, empirical, options);
    }));
  }
  StartResult best;
  bool any_converged = false;
  for (auto& job : jobs) {
    StartResult r = job.get();
    any_converged = any_converged || r.converged;
    if (r.cost < best.cost || (r.cost == best.cost && !best.converged)) {
      best = std::move(r);
    }
  }

  FitResult out;
  out.params = unpack(best.theta, variance);
  out.params.drift = std::fabs(out.params.drift);
  out.diagnostics.residual_norm = std::sqrt(best.cost);
  out.diagnostics.iterations = best.iterations;
  out.diagnostics.converged = best.converged;
  out.diagnostics.residual_history = best.history;
  if (!any_converged) {
    throw FitError("fit did not converge from any start (best residual " +
                       std::to_string(out.diagnostics.residual_norm) + ")",
                   out);
  }
  return out;
}

}  // namespace trendlab::theory
