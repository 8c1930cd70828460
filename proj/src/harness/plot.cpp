#include "rtss/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rtss::harness {

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::invalid_argument("no column named " + std::string(name));
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool to_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && !std::isnan(out);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

CsvTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CsvTable table;
  if (!std::getline(in, line) || line.empty()) throw std::invalid_argument("empty CSV");
  if (line.back() == '\r') line.pop_back();
  table.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) throw std::invalid_argument("ragged CSV row: " + line);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::map<std::string, std::vector<PlotPoint>> summarize_series(const CsvTable& table, const PlotSpec& spec) {
  const std::size_t cx = table.column(spec.x);
  const std::size_t cy = table.column(spec.y);
  const std::size_t cs = table.column(spec.series);
  std::map<std::string, std::map<double, std::vector<double>>> groups;
  for (const auto& row : table.rows) {
    double x = 0.0;
    double y = 0.0;
    if (!to_double(row[cx], x) || !to_double(row[cy], y) || std::isinf(y)) continue;
    groups[row[cs]][x].push_back(y);
  }
  std::map<std::string, std::vector<PlotPoint>> out;
  for (const auto& [name, by_x] : groups) {
    for (const auto& [x, ys] : by_x) {
      PlotPoint p;
      p.x = x;
      p.n = static_cast<int>(ys.size());
      double sum = 0.0;
      for (double v : ys) sum += v;
      p.mean = sum / p.n;
      if (p.n > 1) {
        double ss = 0.0;
        for (double v : ys) ss += (v - p.mean) * (v - p.mean);
        p.half_width = 1.96 * std::sqrt(ss / (p.n - 1)) / std::sqrt(static_cast<double>(p.n));
      }
      out[name].push_back(p);
    }
  }
  return out;
}

std::string emit_plot(const CsvTable& table, const PlotSpec& spec) {
  const auto series = summarize_series(table, spec);
  constexpr double kW = 720, kH = 440, kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& [name, pts] : series) {
    for (const PlotPoint& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.mean - p.half_width);
      ymax = std::max(ymax, p.mean + p.half_width);
    }
  }
  if (series.empty()) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const bool logx = xmin > 0 && xmax / xmin > 20;
  auto tx = [&](double x) {
    const double t = logx ? (std::log(x) - std::log(xmin)) / (std::log(xmax) - std::log(xmin)) : (x - xmin) / (xmax - xmin);
    return kLeft + t * (kW - kLeft - kRight);
  };
  auto ty = [&](double y) { return kTop + (1 - (y - ymin) / (ymax - ymin)) * (kH - kTop - kBottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string title = spec.title.empty() ? spec.y + " vs " + spec.x : spec.title;
  svg << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight << "\" y2=\"" << kH - kBottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kH - kBottom
      << "\" stroke=\"black\"/>\n";
  std::vector<double> xticks;
  for (const auto& [name, pts] : series) {
    for (const PlotPoint& p : pts) xticks.push_back(p.x);
  }
  std::sort(xticks.begin(), xticks.end());
  xticks.erase(std::unique(xticks.begin(), xticks.end()), xticks.end());
  for (double x : xticks) {
    svg << "<line x1=\"" << num(tx(x)) << "\" y1=\"" << kH - kBottom << "\" x2=\"" << num(tx(x)) << "\" y2=\""
        << kH - kBottom + 5 << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << num(tx(x)) << "\" y=\"" << kH - kBottom + 18 << "\" text-anchor=\"middle\">" << label(x)
        << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double y = ymin + (ymax - ymin) * i / 5;
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(ty(y)) << "\" x2=\"" << kW - kRight << "\" y2=\""
        << num(ty(y)) << "\" stroke=\"#ddd\"/>";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(ty(y) + 4) << "\" text-anchor=\"end\">" << label(y)
        << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
      << escape(spec.x) << (logx ? " (log scale)" : "") << "</text>\n";
  svg << "<text transform=\"translate(18," << (kTop + kH - kBottom) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y) << "</text>\n";

  std::size_t k = 0;
  for (const auto& [name, pts] : series) {
    const char* color = kPalette[k % std::size(kPalette)];
    std::string band, line;
    for (const PlotPoint& p : pts) band += num(tx(p.x)) + "," + num(ty(p.mean + p.half_width)) + " ";
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      band += num(tx(it->x)) + "," + num(ty(it->mean - it->half_width)) + " ";
    }
    for (const PlotPoint& p : pts) line += num(tx(p.x)) + "," + num(ty(p.mean)) + " ";
    svg << "<g class=\"series\" data-name=\"" << escape(name) << "\">\n";
    svg << "<polygon points=\"" << band << "\" fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    for (const PlotPoint& p : pts) {
      svg << "<circle cx=\"" << num(tx(p.x)) << "\" cy=\"" << num(ty(p.mean)) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    svg << "<rect x=\"" << kW - kRight + 15 << "\" y=\"" << ly - 9 << "\" width=\"14\" height=\"10\" fill=\"" << color
        << "\"/><text x=\"" << kW - kRight + 35 << "\" y=\"" << ly << "\">" << escape(name) << "</text>\n";
    ++k;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rtss::harness
