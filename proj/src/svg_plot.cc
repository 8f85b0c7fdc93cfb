// Copyright 2026 The emlang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emlang/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace emlang {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 70, kTop = 40, kBottom = 90;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string Num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string Tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  double Map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

void Header(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << EscapeXml(title) << "</text>\n";
}

void YAxis(std::ostringstream& out, const Range& r, double x, bool right,
           const std::string& label) {
  const double y0 = kHeight - kBottom, y1 = kTop;
  out << "<line x1=\"" << Num(x) << "\" y1=\"" << Num(y0) << "\" x2=\"" << Num(x)
      << "\" y2=\"" << Num(y1) << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    double v = r.lo + (r.hi - r.lo) * k / 5.0;
    double y = r.Map(v, y0, y1);
    double tx = right ? x + 6 : x - 6;
    out << "<text x=\"" << Num(tx) << "\" y=\"" << Num(y + 4) << "\" text-anchor=\""
        << (right ? "start" : "end") << "\">" << Tick(v) << "</text>\n";
  }
  double lx = right ? kWidth - 14 : 16;
  double ly = (y0 + y1) / 2;
  out << "<text x=\"" << Num(lx) << "\" y=\"" << Num(ly) << "\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 " << Num(lx) << ' ' << Num(ly) << ")\">"
      << EscapeXml(label) << "</text>\n";
}

}  // namespace

std::string EscapeXml(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string RenderLinePlot(const LinePlot& plot) {
  Range xr, left, right;
  for (const auto& s : plot.series) {
    Range& yr = s.right_axis ? right : left;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      xr.Add(s.x[i]);
      yr.Add(s.y[i]);
      if (i < s.band_low.size()) yr.Add(s.band_low[i]);
      if (i < s.band_high.size()) yr.Add(s.band_high[i]);
    }
  }
  if (!plot.x_categories.empty()) {
    xr.lo = -0.5;
    xr.hi = static_cast<double>(plot.x_categories.size()) - 0.5;
  } else {
    xr.Finish();
  }
  left.Finish();
  right.Finish();
  const bool dual = !plot.y2_label.empty();
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

  std::ostringstream out;
  Header(out, plot.title);
  out << "<line x1=\"" << Num(x0) << "\" y1=\"" << Num(y0) << "\" x2=\"" << Num(x1)
      << "\" y2=\"" << Num(y0) << "\" stroke=\"black\"/>\n";
  YAxis(out, left, x0, false, plot.y_label);
  if (dual) YAxis(out, right, x1, true, plot.y2_label);
  if (!plot.x_categories.empty()) {
    for (std::size_t k = 0; k < plot.x_categories.size(); ++k) {
      double x = xr.Map(static_cast<double>(k), x0, x1);
      out << "<text x=\"" << Num(x) << "\" y=\"" << Num(y0 + 16)
          << "\" text-anchor=\"middle\">" << EscapeXml(plot.x_categories[k]) << "</text>\n";
    }
  } else {
    for (int k = 0; k <= 5; ++k) {
      double v = xr.lo + (xr.hi - xr.lo) * k / 5.0;
      out << "<text x=\"" << Num(xr.Map(v, x0, x1)) << "\" y=\"" << Num(y0 + 16)
          << "\" text-anchor=\"middle\">" << Tick(v) << "</text>\n";
    }
  }
  out << "<text x=\"" << Num((x0 + x1) / 2) << "\" y=\"" << Num(y0 + 36)
      << "\" text-anchor=\"middle\">" << EscapeXml(plot.x_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const Range& yr = s.right_axis ? right : left;
    const char* color = kPalette[k % std::size(kPalette)];
    auto point = [&](double x, double y) {
      return Num(xr.Map(x, x0, x1)) + "," + Num(yr.Map(y, y0, y1));
    };
    if (s.band_low.size() == s.y.size() && s.band_high.size() == s.y.size() && !s.y.empty()) {
      std::string poly;
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (std::isfinite(s.band_high[i])) poly += point(s.x[i], s.band_high[i]) + " ";
      }
      for (std::size_t i = s.y.size(); i-- > 0;) {
        if (std::isfinite(s.band_low[i])) poly += point(s.x[i], s.band_low[i]) + " ";
      }
      out << "<polygon points=\"" << poly << "\" fill=\"" << color
          << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }
    std::string line;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      if (std::isfinite(s.y[i])) line += point(s.x[i], s.y[i]) + " ";
    }
    out << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"" << (s.right_axis ? " stroke-dasharray=\"5,3\"" : "")
        << "/>\n";
    if (s.y.size() <= 40) {
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        out << "<circle cx=\"" << Num(xr.Map(s.x[i], x0, x1)) << "\" cy=\""
            << Num(yr.Map(s.y[i], y0, y1)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    double ly = kHeight - kBottom + 54 + 14 * static_cast<double>(k / 4);
    double lx = kLeft + 160 * static_cast<double>(k % 4);
    out << "<rect x=\"" << Num(lx) << "\" y=\"" << Num(ly - 8) << "\" width=\"10\""
        << " height=\"10\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << Num(lx + 14) << "\" y=\"" << Num(ly + 1) << "\">"
        << EscapeXml(s.name + (dual && s.right_axis ? " (right)" : "")) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string RenderBarPlot(const BarPlot& plot) {
  std::ostringstream out;
  Header(out, plot.title);
  const std::size_t panels = std::max<std::size_t>(plot.groups.size(), 1);
  const double panel_width = (kWidth - kLeft - 20) / static_cast<double>(panels);
  const double y0 = kHeight - kBottom, y1 = kTop + 10;
  double top = 0.0;
  for (const auto& g : plot.groups) {
    for (const auto& b : g.bars) top = std::max(top, b.value);
  }
  if (top <= 0.0) top = 1.0;
  Range r;
  r.lo = 0.0;
  r.hi = top * 1.1;
  YAxis(out, r, kLeft, false, plot.y_label);
  for (std::size_t p = 0; p < plot.groups.size(); ++p) {
    const auto& g = plot.groups[p];
    const double px = kLeft + panel_width * static_cast<double>(p);
    const double slot = panel_width / static_cast<double>(std::max<std::size_t>(g.bars.size(), 1));
    const char* color = kPalette[p % std::size(kPalette)];
    for (std::size_t k = 0; k < g.bars.size(); ++k) {
      const auto& b = g.bars[k];
      double x = px + slot * static_cast<double>(k) + slot * 0.15;
      double y = r.Map(b.value, y0, y1);
      out << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" width=\""
          << Num(slot * 0.7) << "\" height=\"" << Num(y0 - y) << "\" fill=\"" << color
          << "\"/>\n";
      if (!b.annotation.empty()) {
        out << "<text x=\"" << Num(x + slot * 0.35) << "\" y=\"" << Num(y - 4)
            << "\" text-anchor=\"middle\" font-size=\"9\">" << EscapeXml(b.annotation)
            << "</text>\n";
      }
      out << "<text x=\"" << Num(x + slot * 0.35) << "\" y=\"" << Num(y0 + 12)
          << "\" text-anchor=\"middle\" font-size=\"9\">" << EscapeXml(b.label)
          << "</text>\n";
    }
    out << "<text x=\"" << Num(px + panel_width / 2) << "\" y=\"" << Num(y0 + 34)
        << "\" text-anchor=\"middle\">" << EscapeXml(g.name) << "</text>\n";
  }
  out << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(y0) << "\" x2=\""
      << Num(kWidth - 20) << "\" y2=\"" << Num(y0) << "\" stroke=\"black\"/>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace emlang
