#pragma once

#include <istream>

#include "trendlab/series.hpp"

namespace trendlab::cli {

// Reads "date,close" CSV (extra columns ignored, rows in any order) into a
// sorted daily PriceSeries. Malformed rows are reported with their line
// number; duplicate dates and non-positive prices are rejected.
PriceSeries parse_price_csv(std::istream& in);

}  // namespace trendlab::cli
