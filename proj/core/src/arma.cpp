#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "trendlab/rng.hpp"
#include "trendlab/simulate.hpp"

namespace trendlab::sim {

namespace {

constexpr double kRootMargin = 1e-9;

// Synthetic weekly timestamps for simulated series; 1950-01-06 is a Friday.
std::vector<Date> synthetic_weekly_dates(std::size_t length) {
  using namespace std::chrono;
  Date start = sys_days{year{1950} / January / 6};
  std::vector<Date> dates(length);
  for (std::size_t i = 0; i < length; ++i) {
    dates[i] = start + days{static_cast<long>(7 * i)};
  }
  return dates;
}

// Durand-Kerner iteration for all complex roots of a polynomial with real
// coefficients c0 + c1 x + ... + cn x^n (cn != 0).
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeff) {
  const std::size_t degree = coeff.size() - 1;
  std::vector<std::complex<double>> c(coeff.begin(), coeff.end());
  for (auto& v : c) v /= coeff.back();

  std::vector<std::complex<double>> roots(degree);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> power(1.0, 0.0);
  for (std::size_t i = 0; i < degree; ++i) {
    power *= seed;
    roots[i] = power;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = c[degree];
    for (std::size_t k = degree; k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }
  return roots;
}

}  // namespace

StationarityCheck arma_is_stationary(const ArmaSpec& spec) {
  StationarityCheck out;
  if (spec.ar.empty()) {
    return out;
  }
  // Characteristic polynomial 1 - phi_1 x - ... - phi_p x^p.
  std::vector<double> coeff(spec.ar.size() + 1);
  coeff[0] = 1.0;
  for (std::size_t i = 0; i < spec.ar.size(); ++i) coeff[i + 1] = -spec.ar[i];
  while (coeff.size() > 1 && coeff.back() == 0.0) coeff.pop_back();
  if (coeff.size() == 1) {
    return out;  // all AR coefficients zero
  }
  const auto roots = polynomial_roots(coeff);
  out.root_moduli.reserve(roots.size());
  for (const auto& r : roots) out.root_moduli.push_back(std::abs(r));
  std::sort(out.root_moduli.begin(), out.root_moduli.end());
  out.stationary = out.root_moduli.front() > 1.0 + kRootMargin;
  return out;
}

ReturnSeries arma_generate(const ArmaSpec& spec, std::size_t length,
                           std::uint64_t seed) {
  if (length < 1) {
    throw std::invalid_argument("length must be >= 1");
  }
  if (!(spec.noise_variance > 0.0)) {
    throw std::invalid_argument("noise variance must be > 0");
  }
  const std::size_t p = spec.ar.size();
  const std::size_t q = spec.ma.size();
  const std::size_t burn_in = std::max<std::size_t>(500, 10 * (p + q));
  const std::size_t total = burn_in + length;
  const double sigma = std::sqrt(spec.noise_variance);

  Rng rng(seed);
  std::vector<double> z(total, 0.0);
  std::vector<double> eps(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    eps[t] = sigma * rng.next_gaussian();
    double v = spec.intercept + eps[t];
    for (std::size_t i = 0; i < p && i < t; ++i) v += spec.ar[i] * z[t - 1 - i];
    for (std::size_t j = 0; j < q && j < t; ++j) v += spec.ma[j] * eps[t - 1 - j];
    z[t] = v;
  }
  std::vector<double> values(z.begin() + static_cast<long>(burn_in), z.end());
  return ReturnSeries::make(synthetic_weekly_dates(length), std::move(values),
                            ReturnKind::raw_log, Frequency::weekly);
}

theory::Params arma_moments(const ArmaSpec& spec, int max_lag) {
  if (max_lag < 0) {
    throw std::invalid_argument("max_lag must be >= 0");
  }
  if (!(spec.noise_variance > 0.0)) {
    throw std::invalid_argument("noise variance must be > 0");
  }
  const auto check = arma_is_stationary(spec);
  if (!check.stationary) {
    throw std::invalid_argument("ARMA spec is not stationary");
  }
  const std::size_t p = spec.ar.size();
  const std::size_t q = spec.ma.size();

  // MA(inf) psi weights: psi_0 = 1, psi_j = theta_j + sum phi_i psi_{j-i}.
  // The expansion decays geometrically for stationary specs; extend until
  // the running tail is negligible.
  std::vector<double> psi{1.0};
  const std::size_t hard_cap = 2'000'000;
  std::size_t quiet = 0;
  for (std::size_t j = 1; j < hard_cap; ++j) {
    double v = (j <= q) ? spec.ma[j - 1] : 0.0;
    for (std::size_t i = 1; i <= p && i <= j; ++i) {
      v += spec.ar[i - 1] * psi[j - i];
    }
    psi.push_back(v);
    quiet = (std::fabs(v) < 1e-18) ? quiet + 1 : 0;
    if (quiet > std::max<std::size_t>(p + q, 8) &&
        j > static_cast<std::size_t>(max_lag) + p + q) {
      break;
    }
  }
  if (psi.size() >= hard_cap) {
    throw std::runtime_error("psi-weight expansion failed to decay (near-unit root)");
  }

  double ar_sum = 0.0;
  for (double a : spec.ar) ar_sum += a;

  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < psi.size(); ++i) acc += psi[i] * psi[i + k];
    gamma[k] = spec.noise_variance * acc;
  }

  theory::Params out;
  out.drift = spec.intercept / (1.0 - ar_sum);
  out.variance = gamma[0];
  out.autocorr.resize(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    out.autocorr[static_cast<std::size_t>(k) - 1] = gamma[k] / gamma[0];
  }
  return out;
}

}  // namespace trendlab::sim
