#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "frechet/error.hpp"

namespace frechet::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), both > 0
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

// Minimal log-log line plot, one polyline per series.
inline std::string line_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                             const std::string& ylabel) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0)) continue;
      x0 = std::min(x0, std::log10(x));
      x1 = std::max(x1, std::log10(x));
      y0 = std::min(y0, std::log10(y));
      y1 = std::max(y1, std::log10(y));
    }
  require(std::isfinite(x0) && std::isfinite(y0), ErrorKind::NothingToFit, "no positive points to plot");
  if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  const double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
  auto px = [&](double x) { return L + (std::log10(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (std::log10(y) - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
  out += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(W - R) + "\" y2=\"" + fmt(H - B) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(T) + "\" x2=\"" + fmt(L) + "\" y2=\"" + fmt(H - B) +
         "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d) {
    const double x = px(std::pow(10.0, d));
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(H - B + 16) + "\" text-anchor=\"middle\" font-size=\"10\">1e" +
           std::to_string(d) + "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d) {
    const double y = py(std::pow(10.0, d));
    out += "<text x=\"" + fmt(L - 6) + "\" y=\"" + fmt(y + 3) + "\" text-anchor=\"end\" font-size=\"10\">1e" +
           std::to_string(d) + "</text>\n";
  }
  out += "<text x=\"" + fmt((L + W - R) / 2) + "\" y=\"" + fmt(H - 10) + "\" text-anchor=\"middle\" font-size=\"12\">" +
         escape(xlabel) + " (log)</text>\n";
  out += "<text x=\"16\" y=\"" + fmt((T + H - B) / 2) + "\" font-size=\"12\" transform=\"rotate(-90 16 " +
         fmt((T + H - B) / 2) + ")\" text-anchor=\"middle\">" + escape(ylabel) + " (log)</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto* color = colors[i % 6];
    std::string pts;
    for (const auto& [x, y] : series[i].points)
      if (x > 0.0 && y > 0.0) pts += fmt(px(x)) + "," + fmt(py(y)) + " ";
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    out += "<text x=\"" + fmt(W - R + 10) + "\" y=\"" + fmt(T + 16.0 * (i + 1)) + "\" fill=\"" + color +
           "\" font-size=\"12\">" + escape(series[i].name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace frechet::svg
