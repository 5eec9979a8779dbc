#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "trendlab/rng.hpp"
#include "trendlab/simulate.hpp"

namespace trendlab::sim {

std::string generator_description(const GeneratorSpec& spec) {
  std::ostringstream os;
  if (std::holds_alternative<ArmaSpec>(spec)) {
    const ArmaSpec& a = std::get<ArmaSpec>(spec);
    os << "arma(p=" << a.ar.size() << ",q=" << a.ma.size()
       << ",phi0=" << a.intercept << ",sigma2=" << a.noise_variance << ")";
  } else {
    const OscSpec& o = std::get<OscSpec>(spec);
    os << "oscillating-drift(mu=" << o.drift << ",A=" << o.amplitude
       << ",T=" << o.period << ",sigma=" << o.noise_sigma
       << (o.noise_targets.empty() ? ",noise=iid" : ",noise=ma") << ")";
  }
  return os.str();
}

McSweepResult monte_carlo_sweep(const GeneratorSpec& spec, std::size_t realizations,
                                std::size_t length, const std::vector<int>& lookbacks,
                                StrategyMode mode, SweepStatistic statistic,
                                std::uint64_t seed, int threads) {
  if (realizations < 2) {
    throw std::invalid_argument("monte carlo sweep needs at least 2 realizations");
  }
  if (std::holds_alternative<OscSpec>(spec)) {
    validate_spec(std::get<OscSpec>(spec));
  }
  const std::size_t points = lookbacks.size();
  std::vector<std::vector<double>> per_realization(realizations);

  auto run_one = [&](std::size_t r) {
    const std::uint64_t s = Rng::stream_seed(seed, r);
    ReturnSeries series =
        std::holds_alternative<ArmaSpec>(spec)
            ? arma_generate(std::get<ArmaSpec>(spec), length, s)
            : oscillating_drift_generate(std::get<OscSpec>(spec), length, s);
    per_realization[r] = sweep(series, lookbacks, mode, statistic).values;
  };

  std::size_t worker_count = threads > 0
                                 ? static_cast<std::size_t>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min(worker_count, realizations);
  if (worker_count <= 1) {
    for (std::size_t r = 0; r < realizations; ++r) run_one(r);
  } else {
    std::vector<std::future<void>> jobs;
    jobs.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t r = w; r < realizations; r += worker_count) run_one(r);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  // Aggregate in realization-index order: the result does not depend on the
  // thread count or completion order.
  McSweepResult out;
  out.realizations = realizations;
  out.seed = seed;
  out.generator = generator_description(spec);
  out.curve.lookbacks = lookbacks;
  out.curve.statistic = statistic;
  out.curve.annualization = 1.0;
  out.curve.values.assign(points, 0.0);
  out.curve.stderrs.assign(points, 0.0);
  for (std::size_t r = 0; r < realizations; ++r) {
    for (std::size_t i = 0; i < points; ++i) {
      out.curve.values[i] += per_realization[r][i];
    }
  }
  const double count = static_cast<double>(realizations);
  for (std::size_t i = 0; i < points; ++i) out.curve.values[i] /= count;
  for (std::size_t r = 0; r < realizations; ++r) {
    for (std::size_t i = 0; i < points; ++i) {
      const double d = per_realization[r][i] - out.curve.values[i];
      out.curve.stderrs[i] += d * d;
    }
  }
  for (std::size_t i = 0; i < points; ++i) {
    out.curve.stderrs[i] = std::sqrt(out.curve.stderrs[i] / count) / std::sqrt(count);
  }
  return out;
}

OracleResult sample_strategy_moments(const theory::Params& params, int lookback,
                                     std::size_t samples, std::uint64_t seed) {
  if (lookback < 1) {
    throw std::invalid_argument("lookback must be >= 1");
  }
  if (samples < 2) {
    throw std::invalid_argument("oracle needs at least 2 samples");
  }
  const std::size_t dim = static_cast<std::size_t>(lookback) + 1;

  // Covariance of (X_{t-N}, ..., X_{t-1}, X_t) under the stationary model.
  std::vector<double> cov(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const int lag = static_cast<int>(i > j ? i - j : j - i);
      cov[i * dim + j] = params.variance * params.rho(lag);
    }
  }
  // Cholesky; failure means the implied correlation matrix is not PSD.
  std::vector<double> chol(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = cov[i * dim + j];
      for (std::size_t k = 0; k < j; ++k) s -= chol[i * dim + k] * chol[j * dim + k];
      if (i == j) {
        if (s <= 1e-12 * params.variance) {
          throw std::invalid_argument(
              "model covariance is not positive definite at dimension " +
              std::to_string(dim));
        }
        chol[i * dim + i] = std::sqrt(s);
      } else {
        chol[i * dim + j] = s / chol[j * dim + j];
      }
    }
  }

  Rng rng(seed);
  std::vector<double> z(dim), x(dim);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (std::size_t it = 0; it < samples; ++it) {
    for (std::size_t i = 0; i < dim; ++i) z[i] = rng.next_gaussian();
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = params.drift;
      for (std::size_t k = 0; k <= i; ++k) acc += chol[i * dim + k] * z[k];
      x[i] = acc;
    }
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < dim; ++i) m += x[i];
    m /= static_cast<double>(lookback);
    const double r = m * x[dim - 1];
    s1 += r;
    s2 += r * r;
    s3 += r * r * r;
    s4 += r * r * r * r;
  }
  const double n = static_cast<double>(samples);
  const double mean = s1 / n;
  const double m2 = s2 / n - mean * mean;
  // Central fourth moment from raw moments.
  const double m4 = s4 / n - 4.0 * mean * (s3 / n) + 6.0 * mean * mean * (s2 / n) -
                    3.0 * mean * mean * mean * mean;

  OracleResult out;
  out.samples = samples;
  out.mean = mean;
  out.variance = m2;
  out.mean_stderr = std::sqrt(std::max(m2, 0.0) / n);
  out.variance_stderr = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  return out;
}

}  // namespace trendlab::sim
