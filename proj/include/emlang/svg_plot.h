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

#ifndef EMLANG_SVG_PLOT_H_
#define EMLANG_SVG_PLOT_H_

#include <string>
#include <vector>

namespace emlang {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  // Optional deviation band, same length as y.
  std::vector<double> band_low;
  std::vector<double> band_high;
  bool right_axis = false;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string y2_label;  // enables the right axis when non-empty
  // Categorical x axis when non-empty: x values index into the labels.
  std::vector<std::string> x_categories;
  std::vector<PlotSeries> series;
};

struct Bar {
  std::string label;
  double value = 0.0;
  std::string annotation;
};

struct BarGroup {
  std::string name;
  std::vector<Bar> bars;
};

struct BarPlot {
  std::string title;
  std::string y_label;
  std::vector<BarGroup> groups;  // one panel per group
};

// Self-contained SVG documents. Non-finite points are skipped.
std::string RenderLinePlot(const LinePlot& plot);
std::string RenderBarPlot(const BarPlot& plot);

std::string EscapeXml(const std::string& text);

}  // namespace emlang

#endif  // EMLANG_SVG_PLOT_H_
