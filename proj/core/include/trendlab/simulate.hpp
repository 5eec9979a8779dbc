#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "trendlab/strategy.hpp"
#include "trendlab/theory.hpp"

namespace trendlab::sim {

// z_t = phi0 + sum phi_i z_{t-i} + eps_t + sum theta_j eps_{t-j},
// eps ~ N(0, noise_variance).
struct ArmaSpec {
  double intercept = 0.0;          // phi0
  std::vector<double> ar;          // phi_1..phi_p
  std::vector<double> ma;          // theta_1..theta_q
  double noise_variance = 1.0;     // sigma^2_eps, > 0
};

struct StationarityCheck {
  bool stationary = true;
  std::vector<double> root_moduli;  // moduli of the AR polynomial roots
};

// Analytic criterion: all roots of 1 - phi_1 x - ... - phi_p x^p strictly
// outside the unit circle. p == 0 is trivially stationary.
StationarityCheck arma_is_stationary(const ArmaSpec& spec);

// Seeded simulation with a discarded burn-in of max(500, 10 (p+q)) steps.
// Output carries synthetic weekly dates.
ReturnSeries arma_generate(const ArmaSpec& spec, std::size_t length,
                           std::uint64_t seed);

// Exact stationary mean, variance and autocorrelations of the ARMA process
// (psi-weight expansion), truncated at max_lag. Throws on non-stationary
// specs.
theory::Params arma_moments(const ArmaSpec& spec, int max_lag);

struct NoiseTarget {
  int lag = 1;
  double autocorr = 0.0;  // |value| < 0.5
};

// r(t) = drift + amplitude * sgn(sin(2 pi t / period)) + eps_t. With
// noise_targets empty, eps is IID Gaussian(sigma); otherwise eps is a
// zero-mean MA process whose coefficients are solved so the autocorrelation
// at each target lag matches, rescaled to overall variance sigma^2.
struct OscSpec {
  double drift = 0.0;       // mu
  double amplitude = 0.0;   // A
  int period = 2;           // T, >= 2
  double noise_sigma = 1.0; // sigma, > 0
  std::vector<NoiseTarget> noise_targets;
};

void validate_spec(const OscSpec& spec);

ReturnSeries oscillating_drift_generate(const OscSpec& spec, std::size_t length,
                                        std::uint64_t seed);

// MA coefficients (index = lag, entry 0 is the contemporaneous weight)
// realizing the target autocorrelations, before variance rescaling.
// Throws when the targets are unattainable.
std::vector<double> solve_ma_coefficients(const std::vector<NoiseTarget>& targets);

struct AdfResult {
  double statistic = 0.0;
  double critical_value_5pct = 0.0;
  bool unit_root_rejected = false;
  int lags = 0;
  std::size_t sample_size = 0;
};

// Augmented Dickey-Fuller regression with intercept, no trend, and exactly
// max_lag lagged differences; decision at the 5% level. Requires length
// >= 25; throws on degenerate regressions.
AdfResult adf_test(const ReturnSeries& returns, int max_lag);

using GeneratorSpec = std::variant<ArmaSpec, OscSpec>;

std::string generator_description(const GeneratorSpec& spec);

struct McSweepResult {
  SweepCurve curve;           // pointwise mean over realizations, stderr filled
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

// Runs `realizations` independent seeded paths of the generator, sweeps each
// one, and aggregates pointwise mean and standard error (std / sqrt(n)).
// Realization k always uses stream k of the master seed, and aggregation
// walks realizations in index order, so the result is bit-identical however
// many threads run (threads == 0 picks a hardware-based count).
McSweepResult monte_carlo_sweep(const GeneratorSpec& spec, std::size_t realizations,
                                std::size_t length, const std::vector<int>& lookbacks,
                                StrategyMode mode, SweepStatistic statistic,
                                std::uint64_t seed, int threads = 0);

struct OracleResult {
  double mean = 0.0;
  double variance = 0.0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
  std::size_t samples = 0;
};

// Independent check of the closed-form strategy moments: draws exact
// multivariate-Gaussian return vectors (X_{t-N}..X_t) via Cholesky
// factorization of the model covariance and returns the sample mean and
// variance of m_{t-1}(N) * X_t with their standard errors. Never calls the
// closed forms it is meant to check.
OracleResult sample_strategy_moments(const theory::Params& params, int lookback,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace trendlab::sim
