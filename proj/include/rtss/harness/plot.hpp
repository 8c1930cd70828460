#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rtss::harness {

/// A parsed CSV: header names and string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::invalid_argument for an unknown column.
  std::size_t column(std::string_view name) const;
};

/// Plain comma splitting; cells never contain commas or quotes. Throws
/// std::invalid_argument on an empty input or a ragged row.
CsvTable parse_csv(std::string_view text);

struct PlotSpec {
  std::string x;
  std::string y;
  std::string series;
  std::string title;
};

/// Mean and 95% normal-approximation band of one x position of one series.
struct PlotPoint {
  double x = 0.0;
  double mean = 0.0;
  double half_width = 0.0;
  int n = 0;
};

/// Non-numeric and NaN y cells are skipped. Points are sorted by x.
std::map<std::string, std::vector<PlotPoint>> summarize_series(const CsvTable& table, const PlotSpec& spec);

/// Standalone SVG line chart, one line per series with a shaded confidence
/// band; a logarithmic x axis is used when x spans more than a factor of 20.
std::string emit_plot(const CsvTable& table, const PlotSpec& spec);

}  // namespace rtss::harness
