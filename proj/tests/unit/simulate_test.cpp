#include <stdexcept>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "trendlab/generator_json.hpp"
#include "trendlab/simulate.hpp"

using namespace trendlab;
using namespace trendlab::sim;

TEST_CASE("arma stationarity check") {
  ArmaSpec ar1;
  ar1.ar = {0.5};
  const auto ok = arma_is_stationary(ar1);
  CHECK(ok.stationary);
  CHECK(ok.root_moduli[0] == doctest::Approx(2.0));

  ArmaSpec unit;
  unit.ar = {1.0};
  CHECK_FALSE(arma_is_stationary(unit).stationary);

  // The ARMA(2,2) used throughout: roots of 1 - 0.95x + 0.6x^2 have
  // modulus sqrt(1/0.6).
  ArmaSpec arma22;
  arma22.intercept = 0.9;
  arma22.ar = {0.95, -0.6};
  arma22.ma = {1.4, 0.5};
  arma22.noise_variance = 0.3;
  const auto check = arma_is_stationary(arma22);
  CHECK(check.stationary);
  REQUIRE(check.root_moduli.size() == 2);
  CHECK(check.root_moduli[0] == doctest::Approx(std::sqrt(1.0 / 0.6)).epsilon(1e-9));
  CHECK(check.root_moduli[1] == doctest::Approx(1.2910).epsilon(1e-3));

  ArmaSpec none;  // p = 0
  CHECK(arma_is_stationary(none).stationary);
}

TEST_CASE("arma generation basics") {
  SUBCASE("pure noise matches the requested variance") {
    ArmaSpec spec;
    spec.noise_variance = 0.7;
    const auto r = arma_generate(spec, 200000, 11);
    double sum = 0, ss = 0;
    for (double v : r.values) sum += v;
    const double mean = sum / r.size();
    for (double v : r.values) ss += (v - mean) * (v - mean);
    const double var = ss / r.size();
    // var estimator sd ~ sigma^2 sqrt(2/n)
    CHECK(std::fabs(var - 0.7) < 4.0 * 0.7 * std::sqrt(2.0 / r.size()));
    CHECK(std::fabs(mean) < 4.0 * std::sqrt(0.7 / r.size()));
  }
  SUBCASE("intercept drives the long-run mean toward phi0/(1 - sum phi)") {
    ArmaSpec spec;
    spec.intercept = 0.5;
    spec.ar = {0.5};
    spec.noise_variance = 1.0;
    const auto r = arma_generate(spec, 200000, 13);
    double sum = 0;
    for (double v : r.values) sum += v;
    const double mean = sum / r.size();
    // AR(1) mean-estimator sd: sigma_x sqrt((1+phi)/(1-phi)) / sqrt(n)
    const double sd_x = std::sqrt(1.0 / (1.0 - 0.25));
    const double se = sd_x * std::sqrt(1.5 / 0.5) / std::sqrt((double)r.size());
    CHECK(std::fabs(mean - 1.0) < 4.0 * se);
  }
  SUBCASE("same seed, same series; different seed, different series") {
    ArmaSpec spec;
    spec.ar = {0.3};
    spec.ma = {0.2};
    const auto a = arma_generate(spec, 500, 99);
    const auto b = arma_generate(spec, 500, 99);
    const auto c = arma_generate(spec, 500, 100);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
  }
  CHECK_THROWS_AS(arma_generate(ArmaSpec{}, 0, 1), std::invalid_argument);
}

TEST_CASE("arma exact moments") {
  SUBCASE("AR(1) has rho(k) = phi^k and V = sigma^2/(1-phi^2)") {
    ArmaSpec spec;
    spec.intercept = 0.2;
    spec.ar = {0.6};
    spec.noise_variance = 1.3;
    const auto p = arma_moments(spec, 6);
    CHECK(p.drift == doctest::Approx(0.5));
    CHECK(p.variance == doctest::Approx(1.3 / (1.0 - 0.36)).epsilon(1e-10));
    for (int k = 1; k <= 6; ++k) {
      CHECK(p.autocorr[k - 1] == doctest::Approx(std::pow(0.6, k)).epsilon(1e-10));
    }
  }
  SUBCASE("moments match a long simulated path") {
    ArmaSpec spec;
    spec.intercept = 0.9;
    spec.ar = {0.95, -0.6};
    spec.ma = {1.4, 0.5};
    spec.noise_variance = 0.3;
    const auto p = arma_moments(spec, 3);
    const auto r = arma_generate(spec, 400000, 17);
    const auto m = estimate_moments(r, 3);
    CHECK(m.mean == doctest::Approx(p.drift).epsilon(0.02));
    CHECK(m.variance == doctest::Approx(p.variance).epsilon(0.03));
    for (int k = 0; k < 3; ++k) {
      CHECK(std::fabs(m.autocorr[k] - p.autocorr[k]) < 0.02);
    }
  }
  SUBCASE("non-stationary specs are rejected") {
    ArmaSpec spec;
    spec.ar = {1.01};
    CHECK_THROWS_AS(arma_moments(spec, 4), std::invalid_argument);
  }
}

TEST_CASE("ADF unit-root decisions over repeated seeds") {
  int walk_rejections = 0, iid_rejections = 0;
  const int trials = 100;
  for (int s = 0; s < trials; ++s) {
    Rng rng(2000 + s);
    std::vector<double> walk(300), iid(300);
    double level = 0.0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      level += rng.next_gaussian();
      walk[i] = level;
      iid[i] = rng.next_gaussian();
    }
    ReturnSeries w = ReturnSeries::make(testutil::weekly_dates(walk.size()), walk,
                                        ReturnKind::raw_log, Frequency::weekly);
    ReturnSeries x = ReturnSeries::make(testutil::weekly_dates(iid.size()), iid,
                                        ReturnKind::raw_log, Frequency::weekly);
    if (adf_test(w, 2).unit_root_rejected) ++walk_rejections;
    if (adf_test(x, 2).unit_root_rejected) ++iid_rejections;
  }
  CHECK(walk_rejections <= trials / 10);       // fail to reject >= 90%
  CHECK(iid_rejections >= trials * 9 / 10);    // reject >= 90%
}

TEST_CASE("ADF degenerate inputs") {
  std::vector<double> line(60);
  for (std::size_t i = 0; i < line.size(); ++i) line[i] = 2.0 + 0.5 * i;
  ReturnSeries r = ReturnSeries::make(testutil::weekly_dates(line.size()), line,
                                      ReturnKind::raw_log, Frequency::weekly);
  CHECK_THROWS_AS(adf_test(r, 2), std::runtime_error);

  std::vector<double> tiny(10, 0.1);
  ReturnSeries t = ReturnSeries::make(testutil::weekly_dates(tiny.size()), tiny,
                                      ReturnKind::raw_log, Frequency::weekly);
  CHECK_THROWS_AS(adf_test(t, 1), std::invalid_argument);
}

TEST_CASE("oscillating drift generator") {
  SUBCASE("zero amplitude with IID noise is plain Gaussian drift") {
    OscSpec spec;
    spec.drift = 0.075;
    spec.amplitude = 0.0;
    spec.period = 180;
    spec.noise_sigma = 0.15;
    const auto r = oscillating_drift_generate(spec, 150000, 3);
    const auto m = estimate_moments(r, 1);
    CHECK(m.mean == doctest::Approx(0.075).epsilon(0.02));
    CHECK(std::sqrt(m.variance) == doctest::Approx(0.15).epsilon(0.01));
    CHECK(std::fabs(m.autocorr[0]) < 3.0 / std::sqrt((double)r.size()));
  }
  SUBCASE("half-period block means alternate around the drift") {
    OscSpec spec;
    spec.drift = 0.075;
    spec.amplitude = 0.15;
    spec.period = 180;
    spec.noise_sigma = 1e-9;
    const auto r = oscillating_drift_generate(spec, 360, 4);
    auto block_mean = [&](std::size_t from, std::size_t to) {
      double s = 0;
      for (std::size_t i = from; i < to; ++i) s += r.values[i];
      return s / (to - from);
    };
    CHECK(block_mean(0, 90) == doctest::Approx(0.075 + 0.15).epsilon(1e-6));
    CHECK(block_mean(90, 180) == doctest::Approx(0.075 - 0.15).epsilon(1e-6));
    CHECK(block_mean(180, 270) == doctest::Approx(0.075 + 0.15).epsilon(1e-6));
  }
  SUBCASE("MA noise hits the target autocorrelations") {
    OscSpec spec;
    spec.drift = 0.0;
    spec.amplitude = 0.0;
    spec.period = 10;
    spec.noise_sigma = 1.0;
    spec.noise_targets = {{1, 0.05}, {20, 0.08}};
    const auto r = oscillating_drift_generate(spec, 1'000'000, 5);
    const auto m = estimate_moments(r, 20);
    CHECK(std::fabs(m.autocorr[0] - 0.05) < 0.01);
    CHECK(std::fabs(m.autocorr[19] - 0.08) < 0.01);
    CHECK(std::sqrt(m.variance) == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("invalid specs are rejected") {
    OscSpec bad;
    bad.period = 1;
    CHECK_THROWS_AS(oscillating_drift_generate(bad, 10, 1), std::invalid_argument);
    OscSpec big;
    big.period = 10;
    big.noise_targets = {{1, 0.5}};
    CHECK_THROWS_AS(oscillating_drift_generate(big, 10, 1), std::invalid_argument);
    // Jointly unattainable targets.
    CHECK_THROWS(solve_ma_coefficients({{1, 0.49}, {2, 0.49}}));
  }
}

TEST_CASE("monte carlo sweep harness") {
  ArmaSpec spec;
  spec.ar = {0.3};
  spec.noise_variance = 1.0;
  const auto grid = lookback_range(1, 8);

  SUBCASE("bit-identical reruns and thread-count independence") {
    const auto a = monte_carlo_sweep(spec, 20, 300, grid, StrategyMode::linear,
                                     SweepStatistic::sharpe, 321, 1);
    const auto b = monte_carlo_sweep(spec, 20, 300, grid, StrategyMode::linear,
                                     SweepStatistic::sharpe, 321, 4);
    CHECK(a.curve.values == b.curve.values);
    CHECK(a.curve.stderrs == b.curve.stderrs);
  }
  SUBCASE("standard errors shrink like 1/sqrt(realizations)") {
    const auto small = monte_carlo_sweep(spec, 50, 400, grid, StrategyMode::linear,
                                         SweepStatistic::sharpe, 5150);
    const auto large = monte_carlo_sweep(spec, 200, 400, grid, StrategyMode::linear,
                                         SweepStatistic::sharpe, 5150);
    double ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ratio += small.curve.stderrs[i] / large.curve.stderrs[i];
    }
    ratio /= grid.size();
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.25));
  }
  SUBCASE("needs at least two realizations") {
    CHECK_THROWS_AS(monte_carlo_sweep(spec, 1, 300, grid, StrategyMode::linear,
                                      SweepStatistic::sharpe, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("sampling oracle for the strategy moments") {
  SUBCASE("IID zero-drift variance approaches V^2/N") {
    theory::Params p;
    p.drift = 0.0;
    p.variance = 1.0;
    const auto mc = sample_strategy_moments(p, 4, 1'000'000, 88);
    CHECK(std::fabs(mc.variance - 0.25) < 3.0 * mc.variance_stderr);
    CHECK(std::fabs(mc.mean) < 3.0 * mc.mean_stderr);
  }
  SUBCASE("non-PSD correlation input is rejected") {
    theory::Params p;
    p.drift = 0.0;
    p.variance = 1.0;
    p.autocorr = {0.9, 0.0};
    CHECK_THROWS_AS(sample_strategy_moments(p, 2, 100, 1), std::invalid_argument);
  }
}

TEST_CASE("generator specs round-trip through JSON and name bad fields") {
  ArmaSpec arma;
  arma.intercept = 0.9;
  arma.ar = {0.95, -0.6};
  arma.ma = {1.4, 0.5};
  arma.noise_variance = 0.3;
  const auto j = generator_to_json(GeneratorSpec{arma});
  const auto back = generator_from_json(j);
  REQUIRE(std::holds_alternative<ArmaSpec>(back));
  CHECK(std::get<ArmaSpec>(back).ar == arma.ar);
  CHECK(std::get<ArmaSpec>(back).noise_variance == arma.noise_variance);

  OscSpec osc;
  osc.drift = 0.075;
  osc.amplitude = 0.15;
  osc.period = 180;
  osc.noise_sigma = 0.15;
  osc.noise_targets = {{1, 0.05}, {20, 0.08}};
  const auto j2 = generator_to_json(GeneratorSpec{osc});
  const auto back2 = generator_from_json(j2);
  REQUIRE(std::holds_alternative<OscSpec>(back2));
  CHECK(std::get<OscSpec>(back2).noise_targets.size() == 2);

  nlohmann::json bad = {{"type", "arma"}, {"phi", {0.5}}};
  CHECK_THROWS_WITH_AS(generator_from_json(bad), doctest::Contains("sigma2_eps"),
                       std::invalid_argument);
  nlohmann::json bad2 = {{"type", "osc"}, {"mu", 0.1}, {"A", 0.1}};
  CHECK_THROWS_WITH_AS(generator_from_json(bad2), doctest::Contains("T"),
                       std::invalid_argument);
}
