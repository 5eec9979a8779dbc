#include <benchmark/benchmark.h>

#include <cmath>

#include "trendlab/theory.hpp"

namespace {

trendlab::theory::Params demo_params(int lags) {
  trendlab::theory::Params p;
  p.drift = 0.075;
  p.variance = 1.43 * 1.43;
  p.autocorr.resize(lags);
  for (int k = 0; k < lags; ++k) {
    p.autocorr[k] = 0.1 * std::pow(0.7, k);  // AR(1)-shaped, PSD
  }
  return p;
}

void BM_TheoreticalSharpe(benchmark::State& state) {
  const auto p = demo_params(12);
  const int lookback = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trendlab::theory::sharpe(p, lookback));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TheoreticalSharpe)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_PsdValidation(benchmark::State& state) {
  const auto p = demo_params(12);
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trendlab::theory::correlation_psd(p.autocorr, dim));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PsdValidation)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace
