#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "trendlab/strategy.hpp"

namespace trendlab::cli {

// Everything a command run depends on. The full config is echoed into every
// report so a report can be reproduced from itself.
struct RunConfig {
  std::string input;
  std::string command;                 // ingest-check | sweep | simulate | regimes | fit
  int n_min = 1;
  int n_max = 0;                       // 0 = per-command default (400 / 43 / 50)
  StrategyMode mode = StrategyMode::linear;
  int norm_window = 52;
  bool normalize = true;
  std::vector<std::string> anchors = {"mon", "tue", "wed", "thu", "fri"};
  std::uint64_t seed = 1;
  bool annualize = false;
  int epoch_year = 1975;
  int min_regime_weeks = 70;
  std::string output;                  // empty = stdout
  std::string format = "json";         // json | csv (curves only)
  // Breakpoint detection settings (fixed defaults, echoed for provenance).
  int regime_min_segment_months = 12;
  int regime_max_breaks = 60;

  int resolved_n_max() const;
  void validate() const;
};

nlohmann::json config_to_json(const RunConfig& cfg);

// Runs the configured command and returns the report document. Throws with
// a descriptive message on any failure; nothing is written.
nlohmann::json build_report(const RunConfig& cfg);

// Renders the report in the configured format (JSON document, or the
// curves as CSV rows).
std::string render_report(const nlohmann::json& report, const RunConfig& cfg);

// build + render + write to cfg.output (stdout when empty). Returns 0 on
// success; the report file exists iff the return value is 0.
int run_command(const RunConfig& cfg);

}  // namespace trendlab::cli
