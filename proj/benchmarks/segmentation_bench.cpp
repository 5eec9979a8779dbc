#include <benchmark/benchmark.h>

#include <cmath>

#include "trendlab/regimes.hpp"
#include "trendlab/rng.hpp"

namespace {

trendlab::PriceSeries monthly_series(std::size_t months) {
  trendlab::sim::Rng rng(2);
  std::vector<trendlab::Date> dates(months);
  std::vector<double> values(months);
  int year = 1900;
  unsigned month = 1;
  double level = std::log(100.0);
  for (std::size_t i = 0; i < months; ++i) {
    dates[i] = std::chrono::sys_days{std::chrono::year{year} /
                                     std::chrono::month{month} /
                                     std::chrono::day{28}};
    level += 0.004 + 0.03 * rng.next_gaussian();
    values[i] = std::exp(level);
    if (++month > 12) {
      month = 1;
      ++year;
    }
  }
  return trendlab::PriceSeries::make(std::move(dates), std::move(values),
                                     trendlab::Frequency::monthly);
}

void BM_DetectBreakpoints(benchmark::State& state) {
  const auto monthly = monthly_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto part = trendlab::regimes::detect_breakpoints(monthly, 12, 20);
    benchmark::DoNotOptimize(part.segments.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DetectBreakpoints)->RangeMultiplier(2)->Range(128, 1024)
    ->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace
