// trendlab: moving-average trading-rule analytics on price series.
//
//   trendlab --command sweep    --input prices.csv --output report.json
//   trendlab --command simulate --input generator.json --seed 7
//   trendlab --command regimes  --input prices.csv --epoch-year 1975
//   trendlab --command fit      --input curve.json
//   trendlab --command ingest-check --input prices.csv

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trendlab/commands.hpp"

int main(int argc, char** argv) {
  trendlab::cli::RunConfig cfg;
  std::string mode = "linear";
  bool no_normalize = false;

  CLI::App app{"moving-average trading rule: sweeps, simulation, regimes, theory fits"};
  app.add_option("--command", cfg.command,
                 "one of: ingest-check, sweep, simulate, regimes, fit")
      ->required();
  app.add_option("--input", cfg.input, "price CSV, generator spec or curve file");
  app.add_option("--n-min", cfg.n_min, "smallest look-back (default 1)");
  app.add_option("--n-max", cfg.n_max,
                 "largest look-back (default: 400 sweep, 43 regimes, 50 simulate)");
  app.add_option("--mode", mode, "position rule: linear or sign")
      ->check(CLI::IsMember({"linear", "sign"}));
  app.add_option("--norm-window", cfg.norm_window,
                 "volatility normalization window in periods (default 52)");
  app.add_flag("--no-normalize", no_normalize, "skip volatility normalization");
  app.add_option("--anchors", cfg.anchors,
                 "weekly resampling weekdays (default mon,tue,wed,thu,fri)")
      ->delimiter(',');
  app.add_option("--seed", cfg.seed, "master random seed")
      ->envname("TRENDLAB_SEED");
  app.add_flag("--annualize", cfg.annualize,
               "report annualized statistics instead of per-period");
  app.add_option("--epoch-year", cfg.epoch_year,
                 "boundary year for the autocorrelation epochs (default 1975)");
  app.add_option("--min-regime-weeks", cfg.min_regime_weeks,
                 "drop regimes spanning fewer weeks (default 70)");
  app.add_option("--output", cfg.output, "report path (default: stdout)");
  app.add_option("--format", cfg.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    cfg.mode = trendlab::parse_strategy_mode(mode);
    cfg.normalize = !no_normalize;
    return trendlab::cli::run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
