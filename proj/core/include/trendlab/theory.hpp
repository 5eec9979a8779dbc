#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trendlab/strategy.hpp"

namespace trendlab::theory {

// Stationary Gaussian return model: per-period drift, per-period variance
// and autocorrelations for lags 1..L. Lags beyond L contribute exactly 0.
struct Params {
  double drift = 0.0;             // mu
  double variance = 1.0;          // V, > 0
  std::vector<double> autocorr;   // rho(1..L), each in (-1, 1)

  // rho(k) with the truncation applied.
  double rho(int lag) const {
    if (lag <= 0) return 1.0;
    if (static_cast<std::size_t>(lag) > autocorr.size()) return 0.0;
    return autocorr[static_cast<std::size_t>(lag) - 1];
  }
};

// True iff the (dim x dim) Toeplitz correlation matrix built from
// (1, rho(1), rho(2), ...) is positive semi-definite. Levinson-Durbin
// recursion, O(dim^2).
bool correlation_psd(const std::vector<double>& autocorr, int dim);

// Checks variance > 0, every |rho| < 1 and positive semi-definiteness of
// the (lookback+1)-dim correlation matrix the evaluation touches. Throws
// std::invalid_argument on violation.
void validate(const Params& params, int lookback);

// E[m_{t-1}(N) X_t] = mu^2 + (V/N) sum_{i=1..N} rho(i).
double expected_return(const Params& params, int lookback);

// Var(m_{t-1}(N) X_t) under the multivariate Gaussian model. Throws if the
// result comes out negative (inconsistent autocorrelation set).
double strategy_variance(const Params& params, int lookback);

// expected_return / sqrt(strategy_variance). Throws on variance <= 0.
double sharpe(const Params& params, int lookback);

// Drift-only limit (all autocorrelations zero):
// mu^2 / sqrt(V mu^2 + V^2/N + mu^2 V / N) -> |mu|/sqrt(V) as N grows.
double sr_drift_only(double drift, double variance, int lookback);

// Zero-drift limit, where all performance comes from autocorrelation.
// Independent of the variance by construction.
double sr_autocorr_only(const std::vector<double>& autocorr, int lookback);

struct FitOptions {
  int lags = 12;                   // number of rho parameters
  int starts = 8;                  // random multi-start count
  int max_iterations = 250;
  double tolerance = 1e-12;        // relative cost-change convergence
  std::uint64_t seed = 1;
};

struct FitDiagnostics {
  double residual_norm = 0.0;      // sqrt(sum of squared residuals) of best fit
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // best start, per accepted step
};

struct FitResult {
  Params params;
  FitDiagnostics diagnostics;
};

class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, FitResult best_so_far)
      : std::runtime_error(what), best(std::move(best_so_far)) {}
  FitResult best;
};

// Least-squares fit of (drift, rho(1..lags)) to an empirical SR curve with
// the variance held fixed. Autocorrelations are kept in (-1, 1) through a
// tanh reparameterization; Levenberg-Marquardt with numeric Jacobian,
// multi-start, lowest residual wins. The drift enters the model only
// through mu^2, so its sign is unidentifiable and the fitted value is
// reported non-negative. Throws FitError when no start converges.
FitResult fit_params(const SweepCurve& empirical, double variance,
                     const FitOptions& options = {});

}  // namespace trendlab::theory
