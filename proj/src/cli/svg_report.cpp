#include "tac/cli/svg_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "tac/common/errors.hpp"

namespace tac::cli {
namespace {

constexpr double kWidth = 680;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double nice_step(double span, int ticks) {
  const double raw = span / ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(lo <= hi)) return {};
  if (hi - lo < 1e-12) {
    const double pad = std::max(std::abs(lo) * 0.1, 0.5);
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_svg(std::ostream& out, const LineChart& chart) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const Range xr = padded(xmin, xmax);
  Range yr = padded(ymin, ymax);
  const double ystep = nice_step(yr.hi - yr.lo, 5);
  yr.lo = std::floor(yr.lo / ystep) * ystep;
  yr.hi = std::ceil(yr.hi / ystep) * ystep;
  const double xstep = nice_step(xr.hi - xr.lo, 6);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(chart.title) << "</text>\n";

  for (double y = yr.lo; y <= yr.hi + ystep * 1e-9; y += ystep) {
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py(y)) << "\" x2=\"" << coord(kLeft + pw)
        << "\" y2=\"" << coord(py(y)) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(py(y) + 4)
        << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + xstep * 1e-9; x += xstep) {
    out << "<line x1=\"" << coord(px(x)) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(px(x))
        << "\" y2=\"" << coord(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << coord(px(x)) << "\" y=\"" << coord(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
  }
  out << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(pw)
      << "\" height=\"" << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 12)
      << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << coord(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      out << (j ? " " : "") << coord(px(s.points[j].first)) << ',' << coord(py(s.points[j].second));
    }
    out << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      out << "<circle cx=\"" << coord(px(x)) << "\" cy=\"" << coord(py(y)) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    out << "<line x1=\"" << coord(kLeft + pw + 15) << "\" y1=\"" << coord(ly) << "\" x2=\""
        << coord(kLeft + pw + 40) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << coord(kLeft + pw + 46) << "\" y=\"" << coord(ly + 4) << "\">" << escape(s.name)
        << "</text>\n";
  }
  out << "</svg>\n";
}

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " fields");
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw DataError("csv file is empty");
  return table;
}

std::vector<std::pair<std::string, LineChart>> charts_for(const CsvTable& table, const std::string& stem) {
  std::vector<std::pair<std::string, LineChart>> charts;
  const int method = table.column("method");
  const int n = table.column("n_topics");
  if (method >= 0 && n >= 0) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (static_cast<int>(c) == method || static_cast<int>(c) == n) continue;
      LineChart chart{table.header[c], "number of topics", table.header[c], {}};
      std::map<std::string, std::size_t> index;
      for (const auto& row : table.rows) {
        const auto x = parse_number(row[static_cast<std::size_t>(n)]);
        const auto y = parse_number(row[c]);
        if (!x || !y) continue;
        const auto& name = row[static_cast<std::size_t>(method)];
        auto [it, added] = index.try_emplace(name, chart.series.size());
        if (added) chart.series.push_back({name, {}});
        chart.series[it->second].points.emplace_back(*x, *y);
      }
      charts.emplace_back(stem + "_" + table.header[c], std::move(chart));
    }
    return charts;
  }
  LineChart chart{stem, table.header.front(), "value", {}};
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    Series s{table.header[c], {}};
    for (const auto& row : table.rows) {
      const auto x = parse_number(row.front());
      const auto y = parse_number(row[c]);
      if (x && y) s.points.emplace_back(*x, *y);
    }
    if (!s.points.empty()) chart.series.push_back(std::move(s));
  }
  charts.emplace_back(stem, std::move(chart));
  return charts;
}

}  // namespace tac::cli
