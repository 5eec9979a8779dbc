#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "trendlab/rng.hpp"
#include "trendlab/simulate.hpp"
#include "trendlab/theory.hpp"

using namespace trendlab;

namespace {

theory::Params params(double mu, double v, std::vector<double> rho) {
  theory::Params p;
  p.drift = mu;
  p.variance = v;
  p.autocorr = std::move(rho);
  return p;
}

}  // namespace

TEST_CASE("expected strategy return") {
  CHECK(theory::expected_return(params(0.3, 2.0, {}), 5) == doctest::Approx(0.09));
  CHECK(theory::expected_return(params(0.0, 1.0, {0.1}), 1) == doctest::Approx(0.1));
  CHECK(theory::expected_return(params(0.05, 1.0, {0.05, 0.02}), 2) ==
        doctest::Approx(0.0375));
}

TEST_CASE("strategy variance closed form") {
  SUBCASE("IID collapse V^2/N") {
    for (int n : {1, 2, 5, 20}) {
      CHECK(theory::strategy_variance(params(0.0, 1.7, {}), n) ==
            doctest::Approx(1.7 * 1.7 / n));
    }
  }
  SUBCASE("N=1 with drift: V^2 + 2 mu^2 V") {
    const double mu = 0.3, v = 1.4;
    CHECK(theory::strategy_variance(params(mu, v, {}), 1) ==
          doctest::Approx(v * v + 2.0 * mu * mu * v));
  }
  SUBCASE("general case agrees with the sampling oracle") {
    const auto p = params(0.1, 1.0, {0.05, -0.02});
    const auto mc = sim::sample_strategy_moments(p, 3, 1'000'000, 77);
    CHECK(std::fabs(mc.mean - theory::expected_return(p, 3)) <
          3.0 * mc.mean_stderr);
    CHECK(std::fabs(mc.variance - theory::strategy_variance(p, 3)) <
          3.0 * mc.variance_stderr);
  }
}

TEST_CASE("theoretical sharpe coincides with the limit cases") {
  SUBCASE("zero autocorrelation reduces to the drift-only form") {
    const double mu = 0.12, v = 1.9;
    for (int n = 1; n <= 50; ++n) {
      const double a = theory::sharpe(params(mu, v, {}), n);
      const double b = theory::sr_drift_only(mu, v, n);
      CHECK(std::fabs(a - b) <= 1e-13 * std::fabs(b));
    }
  }
  SUBCASE("zero drift reduces to the autocorrelation-only form") {
    const std::vector<double> rho = {0.08, 0.02, -0.03, 0.01};
    for (int n = 1; n <= 50; ++n) {
      const double a = theory::sharpe(params(0.0, 2.3, rho), n);
      const double b = theory::sr_autocorr_only(rho, n);
      CHECK(std::fabs(a - b) <= 1e-13 * std::max(std::fabs(b), 1e-6));
    }
  }
  SUBCASE("the N=2 spot value agrees across both routes and the oracle") {
    const std::vector<double> rho = {0.05, 0.02};
    const double closed = theory::sr_autocorr_only(rho, 2);
    CHECK(theory::sharpe(params(0.0, 1.0, rho), 2) ==
          doctest::Approx(closed).epsilon(1e-12));
    const auto mc = sim::sample_strategy_moments(params(0.0, 1.0, rho), 2,
                                                 2'000'000, 2024);
    const double mc_sr = mc.mean / std::sqrt(mc.variance);
    CHECK(closed == doctest::Approx(mc_sr).epsilon(0.02));
  }
}

TEST_CASE("drift-only sharpe") {
  CHECK(theory::sr_drift_only(0.0, 1.0, 10) == doctest::Approx(0.0));
  SUBCASE("monotonically increasing in N") {
    double prev = 0.0;
    for (int n = 1; n <= 100; ++n) {
      const double v = theory::sr_drift_only(0.2, 1.0, n);
      CHECK(v > prev);
      prev = v;
    }
  }
  SUBCASE("long-lookback limit is |mu|/sqrt(V)") {
    const double mu = 0.1, v = 1.0;
    CHECK(theory::sr_drift_only(mu, v, 1'000'000'000) ==
          doctest::Approx(mu / std::sqrt(v)).epsilon(1e-6));
    CHECK(theory::sr_drift_only(-mu, v, 1'000'000'000) ==
          doctest::Approx(mu / std::sqrt(v)).epsilon(1e-6));
  }
}

TEST_CASE("autocorrelation-only sharpe") {
  CHECK(theory::sr_autocorr_only({}, 7) == doctest::Approx(0.0));
  SUBCASE("variance never enters") {
    const std::vector<double> rho = {0.05, 0.02};
    const double a = theory::sharpe(params(0.0, 1.0, rho), 2);
    const double b = theory::sharpe(params(0.0, 2.0, rho), 2);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("validation rejects broken parameter sets") {
  CHECK_THROWS_AS(theory::expected_return(params(0.0, -1.0, {}), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(theory::expected_return(params(0.0, 1.0, {1.0}), 3),
                  std::invalid_argument);
  // (1, 0.9, 0) is not a valid correlation sequence at dimension 3.
  CHECK(theory::correlation_psd({0.9}, 2));
  CHECK_FALSE(theory::correlation_psd({0.9, 0.0}, 3));
  CHECK_THROWS_AS(theory::sharpe(params(0.0, 1.0, {0.9, 0.0}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(theory::sharpe(params(0.1, 1.0, {}), 0), std::invalid_argument);
}

TEST_CASE("variance stays positive over randomized PSD-valid models") {
  // MA-implied autocorrelations are PSD by construction.
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    sim::Rng rng(seed);
    sim::ArmaSpec spec;
    spec.intercept = 0.4 * (rng.next_double() - 0.5);
    spec.ma = {0.8 * (rng.next_double() - 0.5), 0.8 * (rng.next_double() - 0.5),
               0.8 * (rng.next_double() - 0.5)};
    spec.noise_variance = 0.5 + rng.next_double();
    const theory::Params p = sim::arma_moments(spec, 8);
    for (int n = 1; n <= 12; ++n) {
      CHECK(theory::strategy_variance(p, n) > 0.0);
    }
  }
}
