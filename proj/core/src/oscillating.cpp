#include <cmath>
#include <stdexcept>

#include "trendlab/rng.hpp"
#include "trendlab/simulate.hpp"

namespace trendlab::sim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<Date> synthetic_weekly_dates(std::size_t length) {
  using namespace std::chrono;
  Date start = sys_days{year{1950} / January / 6};
  std::vector<Date> dates(length);
  for (std::size_t i = 0; i < length; ++i) {
    dates[i] = start + days{static_cast<long>(7 * i)};
  }
  return dates;
}

inline double sgn(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

// Realized autocorrelation of the MA process with the given coefficient
// vector (index = lag) at `lag`.
double ma_autocorr(const std::vector<double>& c, int lag) {
  double num = 0.0, denom = 0.0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    denom += c[a] * c[a];
    if (a + static_cast<std::size_t>(lag) < c.size()) {
      num += c[a] * c[a + static_cast<std::size_t>(lag)];
    }
  }
  return num / denom;
}

}  // namespace

void validate_spec(const OscSpec& spec) {
  if (spec.period < 2) {
    throw std::invalid_argument("oscillation period must be >= 2");
  }
  if (!(spec.noise_sigma > 0.0)) {
    throw std::invalid_argument("noise sigma must be > 0");
  }
  for (const NoiseTarget& t : spec.noise_targets) {
    if (t.lag < 1) {
      throw std::invalid_argument("noise target lag must be >= 1");
    }
    if (!(std::fabs(t.autocorr) < 0.5)) {
      throw std::invalid_argument("noise target autocorrelation " +
                                  std::to_string(t.autocorr) +
                                  " outside the attainable range (-0.5, 0.5)");
    }
  }
  for (std::size_t i = 0; i < spec.noise_targets.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.noise_targets.size(); ++j) {
      if (spec.noise_targets[i].lag == spec.noise_targets[j].lag) {
        throw std::invalid_argument("duplicate noise target lag " +
                                    std::to_string(spec.noise_targets[i].lag));
      }
    }
  }
}

std::vector<double> solve_ma_coefficients(const std::vector<NoiseTarget>& targets) {
  if (targets.empty()) {
    return {1.0};
  }
  int max_lag = 0;
  for (const NoiseTarget& t : targets) max_lag = std::max(max_lag, t.lag);
  std::vector<double> c(static_cast<std::size_t>(max_lag) + 1, 0.0);
  c[0] = 1.0;

  // Per-lag one-dimensional solve of rho_realized(lag) = target, holding the
  // other coefficients fixed: the MA autocorrelation is (A + B c_l) /
  // (D + c_l^2), a quadratic in c_l. Gauss-Seidel sweeps pick up the
  // cross-lag coupling (c_a c_b pairs at lag |a-b|) until joint convergence.
  for (int sweep = 0; sweep < 500; ++sweep) {
    double shift = 0.0;
    for (const NoiseTarget& t : targets) {
      const std::size_t l = static_cast<std::size_t>(t.lag);
      double a_term = 0.0, b_term = 0.0, d_term = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) {
        if (a != l) d_term += c[a] * c[a];
        const std::size_t b = a + l;
        if (b < c.size()) {
          if (a == l || b == l) {
            b_term += (a == l) ? c[b] : c[a];
          } else {
            a_term += c[a] * c[b];
          }
        }
      }
      const double rho = t.autocorr;
      double next;
      if (std::fabs(rho) < 1e-15) {
        next = (std::fabs(b_term) > 1e-300) ? -a_term / b_term : 0.0;
      } else {
        // rho c^2 - B c + (rho D - A) = 0
        const double disc = b_term * b_term - 4.0 * rho * (rho * d_term - a_term);
        if (disc < 0.0) {
          throw std::runtime_error("unattainable noise autocorrelation " +
                                   std::to_string(rho) + " at lag " +
                                   std::to_string(t.lag));
        }
        // Root of smaller magnitude keeps the process invertible-ish.
        const double r1 = (b_term + std::sqrt(disc)) / (2.0 * rho);
        const double r2 = (b_term - std::sqrt(disc)) / (2.0 * rho);
        next = (std::fabs(r1) < std::fabs(r2)) ? r1 : r2;
      }
      shift = std::max(shift, std::fabs(next - c[l]));
      c[l] = next;
    }
    if (shift < 1e-14) {
      for (const NoiseTarget& t : targets) {
        if (std::fabs(ma_autocorr(c, t.lag) - t.autocorr) > 1e-9) {
          throw std::runtime_error("MA coefficient solve failed verification at lag " +
                                   std::to_string(t.lag));
        }
      }
      return c;
    }
  }
  throw std::runtime_error("MA coefficient solve did not converge");
}

ReturnSeries oscillating_drift_generate(const OscSpec& spec, std::size_t length,
                                        std::uint64_t seed) {
  validate_spec(spec);
  if (length < 1) {
    throw std::invalid_argument("length must be >= 1");
  }
  std::vector<double> coeff = solve_ma_coefficients(spec.noise_targets);
  double sumsq = 0.0;
  for (double v : coeff) sumsq += v * v;
  const double scale = spec.noise_sigma / std::sqrt(sumsq);

  const std::size_t warmup = coeff.size() - 1;
  Rng rng(seed);
  std::vector<double> shocks(warmup + length);
  for (auto& w : shocks) w = rng.next_gaussian();

  std::vector<double> values(length);
  for (std::size_t t = 0; t < length; ++t) {
    double eps = 0.0;
    for (std::size_t l = 0; l < coeff.size(); ++l) {
      eps += coeff[l] * shocks[warmup + t - l];
    }
    // t = 1..length in the model's clock.
    const double phase =
        sgn(std::sin(2.0 * kPi * static_cast<double>(t + 1) / spec.period));
    values[t] = spec.drift + spec.amplitude * phase + scale * eps;
  }
  return ReturnSeries::make(synthetic_weekly_dates(length), std::move(values),
                            ReturnKind::raw_log, Frequency::weekly);
}

}  // namespace trendlab::sim
