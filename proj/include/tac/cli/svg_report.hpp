#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tac::cli {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Standalone SVG line chart with axes, ticks and a legend.
void write_svg(std::ostream& out, const LineChart& chart);

// Numeric CSV with a header row; non-numeric cells stay as text.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(std::istream& in);  // throws DataError

/// Charts for a CSV produced by this tool: one chart per metric for a
/// metrics sweep (a line per method against n_topics), otherwise a single
/// chart of every numeric column against the first. Returns (file stem,
/// chart) pairs.
std::vector<std::pair<std::string, LineChart>> charts_for(const CsvTable& table, const std::string& stem);

}  // namespace tac::cli
