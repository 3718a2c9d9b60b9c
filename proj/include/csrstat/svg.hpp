#pragma once

// Minimal SVG charts: H* curves with the +-1 significance band and delta bars.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "csrstat/errors.hpp"

namespace csrstat {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline const char* palette(std::size_t i) {
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  return colours[i % 7];
}

inline std::string escape(const std::string& s) {
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

struct Frame {
  double w = 640, h = 400, left = 60, right = 150, top = 30, bottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double px(double x) const { return left + (x - x0) / (x1 - x0) * (w - left - right); }
  double py(double y) const { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); }
};

inline std::string open_svg(const Frame& f, const std::string& title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(f.w) + "\" height=\"" +
                  svg_num(f.h) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + svg_num(f.w / 2) + "\" y=\"18\" text-anchor=\"middle\">" + escape(title) + "</text>\n";
  s += "<line x1=\"" + svg_num(f.left) + "\" y1=\"" + svg_num(f.h - f.bottom) + "\" x2=\"" +
       svg_num(f.w - f.right) + "\" y2=\"" + svg_num(f.h - f.bottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + svg_num(f.left) + "\" y1=\"" + svg_num(f.top) + "\" x2=\"" + svg_num(f.left) + "\" y2=\"" +
       svg_num(f.h - f.bottom) + "\" stroke=\"black\"/>\n";
  return s;
}

inline std::string y_ticks(const Frame& f) {
  std::string s;
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / 4.0;
    s += "<text x=\"" + svg_num(f.left - 6) + "\" y=\"" + svg_num(f.py(v) + 4) + "\" text-anchor=\"end\">" +
         svg_num(v) + "</text>\n";
  }
  return s;
}

} // namespace detail

/// Line chart of H* against r with dashed reference lines at +1 and -1.
inline std::string svg_hstar_chart(const std::vector<Series>& series, const std::string& title) {
  if (series.empty()) throw InputError("nothing to plot");
  detail::Frame f;
  f.x0 = 1e300, f.x1 = -1e300, f.y0 = -1.5, f.y1 = 1.5;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) throw InputError("series '" + s.label + "' is malformed");
    for (double x : s.x) f.x0 = std::min(f.x0, x), f.x1 = std::max(f.x1, x);
    for (double y : s.y)
      if (std::isfinite(y)) f.y0 = std::min(f.y0, y), f.y1 = std::max(f.y1, y);
  }
  if (!(f.x1 > f.x0)) f.x1 = f.x0 + 1.0;
  std::string svg = detail::open_svg(f, title) + detail::y_ticks(f);
  for (double ref : {1.0, -1.0})
    svg += "<line x1=\"" + detail::svg_num(f.px(f.x0)) + "\" y1=\"" + detail::svg_num(f.py(ref)) + "\" x2=\"" +
           detail::svg_num(f.px(f.x1)) + "\" y2=\"" + detail::svg_num(f.py(ref)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  svg += "<text x=\"" + detail::svg_num((f.left + f.w - f.right) / 2) + "\" y=\"" + detail::svg_num(f.h - 12) +
         "\" text-anchor=\"middle\">r</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      pts += detail::svg_num(f.px(s.x[i])) + "," + detail::svg_num(f.py(s.y[i])) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(detail::palette(k)) + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
    svg += "<text x=\"" + detail::svg_num(f.w - f.right + 10) + "\" y=\"" + detail::svg_num(f.top + 16.0 * k) +
           "\" fill=\"" + detail::palette(k) + "\">" + detail::escape(s.label) + "</text>\n";
  }
  return svg + "</svg>\n";
}

/// Vertical bar chart, one bar per label.
inline std::string svg_bar_chart(const std::vector<std::string>& labels, const std::vector<double>& values,
                                 const std::string& title) {
  if (labels.size() != values.size() || labels.empty()) throw InputError("bar chart labels and values differ");
  detail::Frame f;
  f.right = 20;
  f.bottom = 90;
  f.y0 = 0.0;
  f.y1 = 0.0;
  for (double v : values) f.y1 = std::max(f.y1, v);
  if (!(f.y1 > 0.0)) f.y1 = 1.0;
  std::string svg = detail::open_svg(f, title) + detail::y_ticks(f);
  const double slot = (f.w - f.left - f.right) / static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = f.left + slot * (static_cast<double>(i) + 0.15);
    const double top = f.py(std::max(0.0, values[i]));
    svg += "<rect x=\"" + detail::svg_num(x) + "\" y=\"" + detail::svg_num(top) + "\" width=\"" +
           detail::svg_num(slot * 0.7) + "\" height=\"" + detail::svg_num(f.py(0.0) - top) + "\" fill=\"" +
           detail::palette(0) + "\"/>\n";
    const double cx = x + slot * 0.35, cy = f.h - f.bottom + 12;
    svg += "<text x=\"" + detail::svg_num(cx) + "\" y=\"" + detail::svg_num(cy) + "\" transform=\"rotate(45 " +
           detail::svg_num(cx) + " " + detail::svg_num(cy) + ")\">" + detail::escape(labels[i]) + "</text>\n";
  }
  return svg + "</svg>\n";
}

} // namespace csrstat
