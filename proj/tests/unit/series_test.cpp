#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "trendlab/series.hpp"

using namespace trendlab;
using namespace trendlab::testutil;

TEST_CASE("date parsing round-trips and rejects impossible dates") {
  CHECK(format_date(parse_date("1987-10-19")) == "1987-10-19");
  CHECK(weekday_code(date_weekday(parse_date("1987-10-19"))) == "mon");
  CHECK_THROWS_AS(parse_date("2020-02-30"), std::invalid_argument);
  CHECK_THROWS_AS(parse_date("2020/02/01"), std::invalid_argument);
  CHECK_THROWS_AS(parse_date("not-a-date"), std::invalid_argument);
  CHECK(parse_weekday("Friday") == parse_weekday("fri"));
}

TEST_CASE("price series construction enforces invariants") {
  CHECK_THROWS_AS(daily_prices({100.0, -5.0}), std::invalid_argument);
  auto dates = business_days(2);
  std::swap(dates[0], dates[1]);
  CHECK_THROWS_AS(PriceSeries::make(dates, {100.0, 101.0}, Frequency::daily),
                  std::invalid_argument);
}

TEST_CASE("log returns: direct evaluation") {
  const auto flat = log_returns(daily_prices({100, 100, 100}));
  REQUIRE(flat.size() == 2);
  CHECK(flat.values[0] == doctest::Approx(0.0));
  CHECK(flat.values[1] == doctest::Approx(0.0));

  const auto doubling = log_returns(daily_prices({100, 200}));
  REQUIRE(doubling.size() == 1);
  CHECK(doubling.values[0] == doctest::Approx(std::log(2.0)));

  const auto mixed = log_returns(daily_prices({100, 105, 102.9}));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed.values[0] == doctest::Approx(std::log(1.05)));
  CHECK(mixed.values[1] == doctest::Approx(std::log(0.98)));
  CHECK(mixed.dates[0] == mixed.dates[0]);
  CHECK(mixed.kind == ReturnKind::raw_log);

  CHECK_THROWS_AS(log_returns(daily_prices({100.0})), std::invalid_argument);
}

TEST_CASE("log returns recover the generating returns from exp-cumsum prices") {
  sim::Rng rng(99);
  std::vector<double> r(500);
  for (auto& v : r) v = 0.02 * rng.next_gaussian();
  std::vector<double> prices(r.size() + 1, 100.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    prices[i + 1] = prices[i] * std::exp(r[i]);
  }
  const auto rt = log_returns(daily_prices(prices));
  REQUIRE(rt.size() == r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(rt.values[i] == doctest::Approx(r[i]).epsilon(1e-12));
  }
}

TEST_CASE("normalize_returns: arithmetic and warm-up") {
  SUBCASE("constant returns map to unit magnitude") {
    const auto norm = normalize_returns(weekly_returns({0.02, 0.02, 0.02, 0.02}), 2);
    REQUIRE(norm.size() == 2);
    CHECK(norm.values[0] == doctest::Approx(1.0));
    CHECK(norm.values[1] == doctest::Approx(1.0));
    const auto neg = normalize_returns(weekly_returns({-0.02, -0.02, -0.02}), 1);
    CHECK(neg.values[0] == doctest::Approx(-1.0));
    CHECK(neg.values[1] == doctest::Approx(-1.0));
  }
  SUBCASE("window mean of absolute returns is the denominator") {
    const auto norm = normalize_returns(weekly_returns({0.01, -0.01, 0.02}), 2);
    REQUIRE(norm.size() == 1);
    CHECK(norm.values[0] == doctest::Approx(2.0));
    CHECK(norm.kind == ReturnKind::normalized);
    CHECK(norm.norm_window == 2);
  }
  SUBCASE("all-zero window names the date") {
    const auto r = weekly_returns({0.0, 0.0, 0.05});
    const std::string date = format_date(r.dates[2]);
    CHECK_THROWS_WITH_AS(normalize_returns(r, 2),
                         doctest::Contains(date.c_str()), std::runtime_error);
  }
  SUBCASE("rejects wrong kind and infeasible window") {
    const auto norm = normalize_returns(weekly_returns({0.01, 0.01, 0.01}), 1);
    CHECK_THROWS_AS(normalize_returns(norm, 1), std::invalid_argument);
    CHECK_THROWS_AS(normalize_returns(weekly_returns({0.01, 0.01}), 2),
                    std::invalid_argument);
  }
}

TEST_CASE("normalized returns are invariant under global price rescaling") {
  sim::Rng rng(3);
  std::vector<double> prices(60);
  double p = 50.0;
  for (auto& v : prices) {
    p *= std::exp(0.01 * rng.next_gaussian());
    v = p;
  }
  std::vector<double> scaled(prices);
  for (auto& v : scaled) v *= 1000.0;
  const auto a = normalize_returns(log_returns(daily_prices(prices)), 5);
  const auto b = normalize_returns(log_returns(daily_prices(scaled)), 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("weekly resampling keeps the anchor weekday only") {
  // 10 consecutive business days = two calendar weeks.
  const auto prices = daily_prices({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto friday = resample_weekly(prices, parse_weekday("fri"));
  REQUIRE(friday.size() == 2);
  CHECK(friday.values[0] == 5);
  CHECK(friday.values[1] == 10);
  CHECK(friday.frequency == Frequency::weekly);

  // Five anchors give five distinct series from one daily series.
  for (const char* code : {"mon", "tue", "wed", "thu", "fri"}) {
    const auto s = resample_weekly(prices, parse_weekday(code));
    CHECK(s.size() == 2);
    CHECK(date_weekday(s.dates[0]) == parse_weekday(code));
  }
  CHECK_THROWS_AS(resample_weekly(prices, parse_weekday("sun")),
                  std::invalid_argument);
}

TEST_CASE("gap filtering drops returns bridging a trading halt") {
  // Two runs of business days separated by a four-month halt.
  auto first = business_days(10);
  auto second = business_days(10, first.back() + std::chrono::days{120});
  std::vector<Date> dates(first);
  dates.insert(dates.end(), second.begin(), second.end());
  std::vector<double> values(dates.size(), 100.0);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += i;
  const auto prices =
      PriceSeries::make(std::move(dates), std::move(values), Frequency::daily);

  const auto weekly = resample_weekly(prices, parse_weekday("fri"));
  const auto returns = log_returns(weekly, 7);
  for (std::size_t i = 1; i < weekly.size(); ++i) {
    // Every surviving return spans at most 7 calendar days.
    const auto it = std::find(returns.dates.begin(), returns.dates.end(),
                              weekly.dates[i]);
    if (it != returns.dates.end()) {
      CHECK(days_between(weekly.dates[i - 1], weekly.dates[i]) <= 7);
    }
  }
  CHECK(returns.size() < weekly.size() - 1);  // the bridge was dropped
}

TEST_CASE("monthly resampling keeps the last trading day per month") {
  // ~3 months of business days.
  std::vector<double> values(64);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = 100.0 + i;
  const auto prices = daily_prices(values);
  const auto monthly = resample_monthly(prices);
  CHECK(monthly.size() == 3);
  CHECK(monthly.frequency == Frequency::monthly);
  // Last observation of each month is kept.
  CHECK(monthly.values.back() == prices.values.back());

  SUBCASE("a month with a single trading day keeps that close") {
    std::vector<Date> dates = {parse_date("2020-01-31"), parse_date("2020-02-14")};
    const auto single =
        resample_monthly(PriceSeries::make(dates, {11.0, 12.0}, Frequency::daily));
    REQUIRE(single.size() == 2);
    CHECK(single.values[0] == 11.0);
    CHECK(single.values[1] == 12.0);
  }
  SUBCASE("Jan 31 missing means Jan 30 is used") {
    std::vector<Date> dates = {parse_date("2020-01-29"), parse_date("2020-01-30"),
                               parse_date("2020-02-03")};
    const auto m =
        resample_monthly(PriceSeries::make(dates, {1.0, 2.0, 3.0}, Frequency::daily));
    CHECK(format_date(m.dates[0]) == "2020-01-30");
    CHECK(m.values[0] == 2.0);
  }
}

TEST_CASE("moment estimates") {
  SUBCASE("population variance and mean on a tiny series") {
    const auto m = estimate_moments(weekly_returns({1.0, 2.0, 3.0}), 0);
    CHECK(m.mean == doctest::Approx(2.0));
    CHECK(m.variance == doctest::Approx(2.0 / 3.0));  // 1/n, not 1/(n-1)
    CHECK(m.count == 3);
  }
  SUBCASE("IID noise has lag-1 autocorrelation within the sampling band") {
    const std::size_t n = 100000;
    const auto r = gaussian_returns(n, 0.0, 1.0, 123);
    const auto m = estimate_moments(r, 4);
    for (double rho : m.autocorr) {
      CHECK(std::fabs(rho) < 3.0 / std::sqrt(static_cast<double>(n)));
    }
  }
  SUBCASE("infeasible lag throws") {
    CHECK_THROWS_AS(estimate_moments(weekly_returns({1.0, 2.0, 3.0}), 2),
                    std::invalid_argument);
  }
  SUBCASE("self-concatenation keeps small-lag autocorrelation signs") {
    // AR(1)-flavored series with clearly positive lag-1 correlation.
    sim::Rng rng(5);
    std::vector<double> v(4000);
    double x = 0.0;
    for (auto& vi : v) {
      x = 0.5 * x + rng.next_gaussian();
      vi = x;
    }
    std::vector<double> doubled(v);
    doubled.insert(doubled.end(), v.begin(), v.end());
    const auto a = estimate_moments(weekly_returns(v), 3);
    const auto b = estimate_moments(weekly_returns(doubled), 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::signbit(a.autocorr[k]) == std::signbit(b.autocorr[k]));
    }
  }
}
