#include "trendlab/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "trendlab/csv.hpp"
#include "trendlab/generator_json.hpp"
#include "trendlab/regimes.hpp"
#include "trendlab/rng.hpp"
#include "trendlab/simulate.hpp"
#include "trendlab/theory.hpp"

namespace trendlab::cli {

namespace {

using nlohmann::json;

constexpr int kGapDays = 7;

int periods_per_year(Frequency f) {
  switch (f) {
    case Frequency::daily: return 252;
    case Frequency::weekly: return 52;
    case Frequency::monthly: return 12;
  }
  return 52;
}

double annualization_factor(const RunConfig& cfg, Frequency f) {
  return cfg.annualize ? std::sqrt(static_cast<double>(periods_per_year(f))) : 1.0;
}

PriceSeries load_prices(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    throw std::invalid_argument("--input is required for command '" + cfg.command +
                                "'");
  }
  std::ifstream in(cfg.input);
  if (!in) {
    throw std::runtime_error("cannot open input file '" + cfg.input + "'");
  }
  return parse_price_csv(in);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

// Weekly processed returns for one anchor: resample, log returns with the
// 7-day gap filter, optional volatility normalization.
ReturnSeries anchor_returns(const PriceSeries& prices, const std::string& anchor,
                            const RunConfig& cfg) {
  const PriceSeries weekly = resample_weekly(prices, parse_weekday(anchor));
  ReturnSeries returns = log_returns(weekly, kGapDays);
  if (cfg.normalize) {
    returns = normalize_returns(returns, cfg.norm_window);
  }
  return returns;
}

json curve_to_json(const std::string& label, const SweepCurve& curve) {
  json j;
  j["label"] = label;
  j["N"] = curve.lookbacks;
  j["value"] = curve.values;
  if (!curve.stderrs.empty()) {
    j["stderr"] = curve.stderrs;
  }
  return j;
}

json base_report(const RunConfig& cfg) {
  json report;
  report["config"] = config_to_json(cfg);
  report["curves"] = json::array();
  report["diagnostics"] = json::object();
  return report;
}

json run_ingest_check(const RunConfig& cfg) {
  const PriceSeries prices = load_prices(cfg);
  json report = base_report(cfg);
  double lo = prices.values.front(), hi = prices.values.front();
  for (double v : prices.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  report["diagnostics"] = {{"rows", prices.size()},
                           {"first_date", format_date(prices.dates.front())},
                           {"last_date", format_date(prices.dates.back())},
                           {"min_price", lo},
                           {"max_price", hi}};
  return report;
}

json run_sweep(const RunConfig& cfg) {
  const PriceSeries prices = load_prices(cfg);
  const auto lookbacks = lookback_range(cfg.n_min, cfg.resolved_n_max());

  json report = base_report(cfg);
  std::vector<SweepCurve> sr_curves, std_curves;
  json anchors_diag = json::object();
  double factor = 1.0;
  for (const std::string& anchor : cfg.anchors) {
    const ReturnSeries returns = anchor_returns(prices, anchor, cfg);
    factor = annualization_factor(cfg, returns.period);
    SweepCurve sr = sweep(returns, lookbacks, cfg.mode, SweepStatistic::sharpe, factor);
    SweepCurve sd = sweep(returns, lookbacks, cfg.mode, SweepStatistic::stddev, factor);
    report["curves"].push_back(curve_to_json("sr_" + anchor, sr));
    anchors_diag[anchor] = {{"weekly_returns", returns.size()},
                            {"buy_and_hold_sr", factor * realized_sharpe(returns)}};
    sr_curves.push_back(std::move(sr));
    std_curves.push_back(std::move(sd));
  }
  report["curves"].push_back(curve_to_json("sr_average", average_curves(sr_curves)));
  report["curves"].push_back(curve_to_json("std_average", average_curves(std_curves)));
  report["diagnostics"] = {{"anchors", anchors_diag},
                           {"normalized", cfg.normalize},
                           {"annualization_factor", factor}};
  return report;
}

json run_simulate(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    throw std::invalid_argument("--input must point to a generator spec file");
  }
  const json doc = load_json_file(cfg.input);
  const sim::GeneratorSpec spec = sim::generator_from_json(doc);

  std::size_t realizations = 200;
  if (doc.contains("realizations")) {
    if (!doc["realizations"].is_number_integer() || doc["realizations"].get<int>() < 2) {
      throw std::invalid_argument("generator spec: field 'realizations' must be an integer >= 2");
    }
    realizations = doc["realizations"].get<std::size_t>();
  }
  std::size_t length = 2000;
  if (doc.contains("length")) {
    if (!doc["length"].is_number_integer() || doc["length"].get<int>() < 2) {
      throw std::invalid_argument("generator spec: field 'length' must be an integer >= 2");
    }
    length = doc["length"].get<std::size_t>();
  }
  bool overlay = false;
  if (doc.contains("theory_overlay")) {
    if (!doc["theory_overlay"].is_boolean()) {
      throw std::invalid_argument("generator spec: field 'theory_overlay' must be a boolean");
    }
    overlay = doc["theory_overlay"].get<bool>();
  }

  json report = base_report(cfg);
  json diag;
  if (std::holds_alternative<sim::ArmaSpec>(spec)) {
    const auto check = sim::arma_is_stationary(std::get<sim::ArmaSpec>(spec));
    diag["stationary"] = check.stationary;
    diag["ar_root_moduli"] = check.root_moduli;
    if (!check.stationary) {
      throw std::invalid_argument("ARMA spec is not stationary (unit or explosive root)");
    }
  } else if (overlay) {
    throw std::invalid_argument(
        "theory_overlay requires a stationary 'arma' generator");
  }

  const auto lookbacks = lookback_range(cfg.n_min, cfg.resolved_n_max());
  const double factor = annualization_factor(cfg, Frequency::weekly);
  sim::McSweepResult mc =
      sim::monte_carlo_sweep(spec, realizations, length, lookbacks, cfg.mode,
                             SweepStatistic::sharpe, cfg.seed);
  if (cfg.annualize) {
    for (auto& v : mc.curve.values) v *= factor;
    for (auto& e : mc.curve.stderrs) e *= factor;
    mc.curve.annualization = factor;
  }
  report["curves"].push_back(curve_to_json("simulated", mc.curve));

  // Probe one realization empirically before trusting the ensemble.
  const ReturnSeries probe =
      std::holds_alternative<sim::ArmaSpec>(spec)
          ? sim::arma_generate(std::get<sim::ArmaSpec>(spec), length,
                               sim::Rng::stream_seed(cfg.seed, 0))
          : sim::oscillating_drift_generate(std::get<sim::OscSpec>(spec), length,
                                            sim::Rng::stream_seed(cfg.seed, 0));
  if (probe.size() >= 25) {
    const sim::AdfResult adf = sim::adf_test(probe, 4);
    diag["adf"] = {{"statistic", adf.statistic},
                   {"critical_value_5pct", adf.critical_value_5pct},
                   {"unit_root_rejected", adf.unit_root_rejected}};
  }

  if (overlay) {
    const theory::Params params =
        sim::arma_moments(std::get<sim::ArmaSpec>(spec), lookbacks.back());
    SweepCurve theory_curve;
    theory_curve.lookbacks = lookbacks;
    theory_curve.statistic = SweepStatistic::sharpe;
    theory_curve.annualization = cfg.annualize ? factor : 1.0;
    for (int n : lookbacks) {
      theory_curve.values.push_back(theory_curve.annualization *
                                    theory::sharpe(params, n));
    }
    report["curves"].push_back(curve_to_json("theory", theory_curve));
    diag["model"] = {{"mu", params.drift}, {"V", params.variance}};
  }

  diag["generator"] = sim::generator_description(spec);
  diag["generator_spec"] = sim::generator_to_json(spec);
  diag["realizations"] = realizations;
  diag["length"] = length;
  report["diagnostics"] = diag;
  return report;
}

json segment_to_json(const regimes::Segment& s) {
  return {{"first", s.first},
          {"last", s.last},
          {"start", format_date(s.start_date)},
          {"end", format_date(s.end_date)},
          {"slope_per_month", s.slope},
          {"intercept", s.intercept},
          {"sse", s.sse}};
}

json run_regimes(const RunConfig& cfg) {
  const PriceSeries prices = load_prices(cfg);
  const PriceSeries monthly = resample_monthly(prices);
  const regimes::RegimePartition detected = regimes::detect_breakpoints(
      monthly, cfg.regime_min_segment_months, cfg.regime_max_breaks);
  const regimes::RegimePartition retained =
      regimes::filter_min_weeks(detected, cfg.min_regime_weeks);

  const auto lookbacks = lookback_range(cfg.n_min, cfg.resolved_n_max());

  std::vector<SweepCurve> all_curves, pre_curves, post_curves;
  std::vector<std::vector<double>> autocorr_by_anchor;
  double pre_pooled = 0.0, post_pooled = 0.0;
  std::size_t pre_count = 0, post_count = 0;  // summed over anchors
  for (const std::string& anchor : cfg.anchors) {
    const ReturnSeries weekly = anchor_returns(prices, anchor, cfg);
    const regimes::AutocorrByRegime ac =
        regimes::regime_autocorrelations(weekly, retained, 1, cfg.epoch_year);
    autocorr_by_anchor.push_back(ac.per_regime);
    pre_pooled += ac.pre_epoch;
    post_pooled += ac.post_epoch;
    pre_count += ac.pre_count;
    post_count += ac.post_count;
    const regimes::RegimeSweepResult rs =
        regimes::regime_sweep(weekly, retained, lookbacks, cfg.mode, cfg.epoch_year);
    all_curves.push_back(rs.average);
    if (rs.pre_epoch) pre_curves.push_back(*rs.pre_epoch);
    if (rs.post_epoch) post_curves.push_back(*rs.post_epoch);
  }
  pre_pooled /= static_cast<double>(cfg.anchors.size());
  post_pooled /= static_cast<double>(cfg.anchors.size());

  const double factor = annualization_factor(cfg, Frequency::weekly);
  auto scaled = [&](SweepCurve curve) {
    if (cfg.annualize) {
      for (auto& v : curve.values) v *= factor;
      for (auto& e : curve.stderrs) e *= factor;
      curve.annualization = factor;
    }
    return curve;
  };

  json report = base_report(cfg);
  report["curves"].push_back(
      curve_to_json("sr_all", scaled(average_curves(all_curves))));
  if (!pre_curves.empty()) {
    report["curves"].push_back(
        curve_to_json("sr_pre_" + std::to_string(cfg.epoch_year),
                      scaled(average_curves(pre_curves))));
  }
  if (!post_curves.empty()) {
    report["curves"].push_back(
        curve_to_json("sr_post_" + std::to_string(cfg.epoch_year),
                      scaled(average_curves(post_curves))));
  }

  json partition;
  partition["breakpoints"] = json::array();
  for (Date d : retained.breakpoint_dates) {
    partition["breakpoints"].push_back(format_date(d));
  }
  partition["segments"] = json::array();
  double total_years = 0.0, min_years = 1e9, max_years = 0.0;
  for (std::size_t i = 0; i < retained.segments.size(); ++i) {
    const regimes::Segment& s = retained.segments[i];
    json seg = segment_to_json(s);
    double mean_ac = 0.0;
    for (const auto& per_anchor : autocorr_by_anchor) mean_ac += per_anchor[i];
    mean_ac /= static_cast<double>(autocorr_by_anchor.size());
    seg["lag1_autocorr"] = mean_ac;
    partition["segments"].push_back(seg);
    const double years = days_between(s.start_date, s.end_date) / 365.25;
    total_years += years;
    min_years = std::min(min_years, years);
    max_years = std::max(max_years, years);
  }
  report["partition"] = partition;
  report["diagnostics"] = {
      {"detected_regimes", detected.segments.size()},
      {"retained_regimes", retained.segments.size()},
      {"mean_regime_years", total_years / retained.segments.size()},
      {"min_regime_years", min_years},
      {"max_regime_years", max_years},
      {"pooled_lag1_pre", pre_pooled},
      {"pooled_lag1_post", post_pooled},
      {"pooled_pre_weeks", pre_count},
      {"pooled_post_weeks", post_count},
      {"epoch_year", cfg.epoch_year}};
  return report;
}

json run_fit(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    throw std::invalid_argument("--input must point to a fit input file");
  }
  const json doc = load_json_file(cfg.input);
  if (!doc.contains("variance") || !doc["variance"].is_number()) {
    throw std::invalid_argument("fit input: field 'variance' (fixed V) is required");
  }
  const double variance = doc["variance"].get<double>();

  json curve_doc;
  if (doc.contains("curve")) {
    curve_doc = doc["curve"];
  } else if (doc.contains("curves") && doc["curves"].is_array() &&
             !doc["curves"].empty()) {
    // Accept a sweep report; prefer the averaged curve.
    curve_doc = doc["curves"].front();
    for (const auto& c : doc["curves"]) {
      if (c.contains("label") && c["label"] == "sr_average") curve_doc = c;
    }
  } else {
    throw std::invalid_argument("fit input: expected 'curve' or a report's 'curves'");
  }
  if (!curve_doc.contains("N") || !curve_doc.contains("value")) {
    throw std::invalid_argument("fit input: curve needs 'N' and 'value' arrays");
  }
  SweepCurve empirical;
  empirical.lookbacks = curve_doc["N"].get<std::vector<int>>();
  empirical.values = curve_doc["value"].get<std::vector<double>>();
  if (empirical.lookbacks.size() != empirical.values.size() || empirical.size() == 0) {
    throw std::invalid_argument("fit input: 'N' and 'value' must be equal-length, non-empty");
  }
  for (std::size_t i = 0; i < empirical.lookbacks.size(); ++i) {
    if (empirical.lookbacks[i] < 1 ||
        (i > 0 && empirical.lookbacks[i] <= empirical.lookbacks[i - 1])) {
      throw std::invalid_argument(
          "fit input: 'N' must be unique, ascending and >= 1");
    }
  }
  empirical.statistic = SweepStatistic::sharpe;

  theory::FitOptions options;
  options.seed = cfg.seed;
  if (doc.contains("lags")) {
    if (!doc["lags"].is_number_integer() || doc["lags"].get<int>() < 1) {
      throw std::invalid_argument("fit input: field 'lags' must be an integer >= 1");
    }
    options.lags = doc["lags"].get<int>();
  }

  const theory::FitResult fit = theory::fit_params(empirical, variance, options);

  json report = base_report(cfg);
  report["curves"].push_back(curve_to_json("empirical", empirical));
  SweepCurve fitted;
  fitted.lookbacks = empirical.lookbacks;
  fitted.statistic = SweepStatistic::sharpe;
  for (int n : fitted.lookbacks) {
    fitted.values.push_back(theory::sharpe(fit.params, n));
  }
  report["curves"].push_back(curve_to_json("fitted", fitted));
  report["params"] = {{"mu", fit.params.drift},
                      {"V", fit.params.variance},
                      {"rho", fit.params.autocorr}};
  report["diagnostics"] = {
      {"residual_norm", fit.diagnostics.residual_norm},
      {"iterations", fit.diagnostics.iterations},
      {"converged", fit.diagnostics.converged},
      {"residual_history", fit.diagnostics.residual_history},
      {"lags", options.lags}};
  return report;
}

}  // namespace

int RunConfig::resolved_n_max() const {
  if (n_max > 0) return n_max;
  if (command == "regimes") return 43;
  if (command == "simulate") return 50;
  return 400;
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands = {"ingest-check", "sweep",
                                                    "simulate", "regimes", "fit"};
  bool known = false;
  for (const auto& c : commands) known = known || (c == command);
  if (!known) {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
  if (n_min < 1) {
    throw std::invalid_argument("--n-min must be >= 1");
  }
  if (n_max != 0 && n_max < n_min) {
    throw std::invalid_argument("--n-max must be >= --n-min");
  }
  if (norm_window < 1) {
    throw std::invalid_argument("--norm-window must be >= 1");
  }
  if (anchors.empty()) {
    throw std::invalid_argument("--anchors must name at least one weekday");
  }
  for (const auto& a : anchors) parse_weekday(a);
  if (format != "json" && format != "csv") {
    throw std::invalid_argument("--format must be json or csv");
  }
  if (min_regime_weeks < 0) {
    throw std::invalid_argument("--min-regime-weeks must be >= 0");
  }
}

json config_to_json(const RunConfig& cfg) {
  return {{"input", cfg.input},
          {"command", cfg.command},
          {"n_min", cfg.n_min},
          {"n_max", cfg.resolved_n_max()},
          {"mode", strategy_mode_name(cfg.mode)},
          {"norm_window", cfg.norm_window},
          {"normalize", cfg.normalize},
          {"anchors", cfg.anchors},
          {"seed", cfg.seed},
          {"annualize", cfg.annualize},
          {"epoch_year", cfg.epoch_year},
          {"min_regime_weeks", cfg.min_regime_weeks},
          {"output", cfg.output},
          {"format", cfg.format},
          {"regime_min_segment_months", cfg.regime_min_segment_months},
          {"regime_max_breaks", cfg.regime_max_breaks}};
}

json build_report(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.command == "ingest-check") return run_ingest_check(cfg);
  if (cfg.command == "sweep") return run_sweep(cfg);
  if (cfg.command == "simulate") return run_simulate(cfg);
  if (cfg.command == "regimes") return run_regimes(cfg);
  return run_fit(cfg);
}

std::string render_report(const json& report, const RunConfig& cfg) {
  if (cfg.format == "json") {
    return report.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "label,N,value,stderr\n";
  if (report.contains("curves")) {
    for (const auto& curve : report["curves"]) {
      const auto& n = curve["N"];
      const auto& value = curve["value"];
      const bool has_se = curve.contains("stderr");
      for (std::size_t i = 0; i < n.size(); ++i) {
        os << curve["label"].get<std::string>() << ',' << n[i].dump() << ','
           << value[i].dump() << ',';
        if (has_se) os << curve["stderr"][i].dump();
        os << '\n';
      }
    }
  }
  return os.str();
}

int run_command(const RunConfig& cfg) {
  const json report = build_report(cfg);
  const std::string body = render_report(report, cfg);
  if (cfg.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open output file '" + cfg.output + "'");
    }
    out << body;
    if (!out) {
      throw std::runtime_error("failed writing output file '" + cfg.output + "'");
    }
  }
  return 0;
}

}  // namespace trendlab::cli
