#include "trendlab/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

namespace trendlab::cli {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_price(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": malformed price '" + field + "'");
  }
  if (!(value > 0.0)) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": non-positive price " + t);
  }
  return value;
}

}  // namespace

PriceSeries parse_price_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty input: missing 'date,close' header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t date_col = SIZE_MAX, close_col = SIZE_MAX;
  {
    const auto header = split_fields(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string name = lower(trim(header[i]));
      if (name == "date") date_col = i;
      if (name == "close") close_col = i;
    }
  }
  if (date_col == SIZE_MAX || close_col == SIZE_MAX) {
    throw std::invalid_argument("header must contain 'date' and 'close' columns");
  }

  struct Row {
    Date date;
    double close;
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() <= std::max(date_col, close_col)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected at least " +
                                  std::to_string(std::max(date_col, close_col) + 1) +
                                  " fields");
    }
    Row row;
    try {
      row.date = parse_date(trim(fields[date_col]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
    row.close = parse_price(fields[close_col], line_no);
    rows.push_back(row);
  }
  if (rows.size() < 1) {
    throw std::invalid_argument("no data rows in input");
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw std::invalid_argument("duplicate date " + format_date(rows[i].date));
    }
  }
  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size());
  for (const Row& r : rows) {
    dates.push_back(r.date);
    values.push_back(r.close);
  }
  return PriceSeries::make(std::move(dates), std::move(values), Frequency::daily);
}

}  // namespace trendlab::cli
