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

#include "emlang/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "emlang/stats.h"
#include "emlang/svg_plot.h"
#include "emlang/trainer.h"

namespace emlang {

int Table::Column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::runtime_error("table has no column '" + name + "'");
  return static_cast<int>(it - header.begin());
}

namespace {

std::string Join(const std::vector<std::string>& cells, char sep) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += sep;
    out += cells[i];
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

double Cell(const std::string& text) { return std::stod(text); }

// Distinct values of a column in first-appearance order.
std::vector<std::string> Distinct(const Table& table, int column) {
  std::vector<std::string> out;
  for (const auto& row : table.rows) {
    if (std::find(out.begin(), out.end(), row[column]) == out.end()) {
      out.push_back(row[column]);
    }
  }
  return out;
}

}  // namespace

std::string TableToText(const Table& table) {
  std::string out = Join(table.header, '\t') + "\n";
  for (const auto& row : table.rows) out += Join(row, '\t') + "\n";
  return out;
}

Table TableFromText(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line)) throw std::runtime_error(name + ": empty table");
  table.header = SplitTabs(line);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto row = SplitTabs(line);
    if (row.size() != table.header.size()) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " columns");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteTable(const Table& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << TableToText(table);
}

Table ReadTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return TableFromText(buffer.str(), path.string());
}

Table VerdictTable(const OrderReport& report) {
  Table t{{"source_a", "source_b", "relation"}, {}};
  for (const auto& v : report.verdicts) {
    t.rows.push_back({v.source_a, v.source_b, ToString(v.relation)});
  }
  return t;
}

Table EvidenceTable(const OrderReport& report) {
  Table t{{"source_a", "source_b", "target", "mean_a", "mean_b", "p_value", "direction"}, {}};
  for (const auto& v : report.verdicts) {
    for (const auto& e : v.evidence) {
      t.rows.push_back({v.source_a, v.source_b, e.target, FormatDouble(e.mean_a),
                        FormatDouble(e.mean_b), FormatDouble(e.p_value),
                        std::to_string(e.direction)});
    }
  }
  return t;
}

std::string ChainText(const OrderReport& report) {
  std::string out = "chain\t" + report.chain + "\n";
  for (std::size_t k = 0; k < report.tiers.size(); ++k) {
    out += "tier " + std::to_string(k) + "\t" + Join(report.tiers[k], ',') + "\n";
  }
  for (const auto& chain : report.maximal_chains) {
    std::string line;
    for (std::size_t i = 0; i < chain.size(); ++i) line += (i ? " > " : "") + chain[i];
    out += "maximal\t" + line + "\n";
  }
  return out;
}

Table DegeneracyTable(const std::vector<DegeneracyRow>& rows) {
  Table t{{"source", "mean", "p25", "p75", "n"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.source, FormatDouble(r.mean), FormatDouble(r.p25),
                      FormatDouble(r.p75), std::to_string(r.counts.size())});
  }
  return t;
}

Table InformationTable(const std::vector<InformationRow>& rows) {
  Table t{{"game", "seed", "message_types", "mutual_information", "type_sum_information"},
          {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.game, std::to_string(r.seed), std::to_string(r.message_types),
                      FormatDouble(r.mutual_information),
                      FormatDouble(r.type_sum_information)});
  }
  return t;
}

Table InformationSummary(const std::vector<InformationRow>& rows) {
  Table t{{"game", "mean_mutual_information", "mean_message_types", "n"}, {}};
  std::vector<std::string> games;
  for (const auto& r : rows) {
    if (std::find(games.begin(), games.end(), r.game) == games.end()) games.push_back(r.game);
  }
  for (const auto& g : games) {
    std::vector<double> mi, types;
    for (const auto& r : rows) {
      if (r.game != g) continue;
      mi.push_back(r.mutual_information);
      types.push_back(r.message_types);
    }
    t.rows.push_back({g, FormatDouble(Mean(mi)), FormatDouble(Mean(types)),
                      std::to_string(mi.size())});
  }
  return t;
}

Table ComponentTable(const std::vector<ComponentRecord>& records) {
  Table t{{"game", "seed", "stage", "rank", "message", "size", "mean_hamming",
           "mean_euclidean"},
          {}};
  for (const auto& r : records) {
    for (std::size_t k = 0; k < r.components.size(); ++k) {
      const auto& c = r.components[k];
      t.rows.push_back({r.game, std::to_string(r.seed), r.stage, std::to_string(k + 1),
                        ToString(c.message), std::to_string(c.meanings.size()),
                        FormatDouble(c.mean_distance), FormatDouble(c.mean_euclidean)});
    }
  }
  return t;
}

Table ComponentDistanceTable(const std::vector<ComponentRecord>& records) {
  Table t{{"game", "seed", "initial_mean_distance", "final_mean_distance"}, {}};
  for (const auto& r : records) {
    if (r.stage != "initial") continue;
    for (const auto& f : records) {
      if (f.stage == "final" && f.game == r.game && f.seed == r.seed) {
        t.rows.push_back({r.game, std::to_string(r.seed),
                          FormatDouble(MeanComponentDistance(r.components)),
                          FormatDouble(MeanComponentDistance(f.components))});
      }
    }
  }
  return t;
}

Table CurveTable(const std::map<std::string, std::vector<CurvePoint>>& curves) {
  Table t{{"game", "epoch", "mean", "sd"}, {}};
  for (const auto& [game, points] : curves) {
    for (const auto& p : points) {
      t.rows.push_back({game, std::to_string(p.epoch), FormatDouble(p.mean),
                        FormatDouble(p.sd)});
    }
  }
  return t;
}

Table TransferSummaryTable(const TransferMatrix& matrix) {
  Table t{{"source", "target", "metric_kind", "mean", "sd", "n"}, {}};
  for (const auto& source : matrix.Sources()) {
    for (const auto& target : matrix.Targets()) {
      auto entry = Aggregate(matrix, source, target);
      if (!entry) continue;
      MetricKind kind = MetricKind::kAccuracy;
      for (const auto& cell : matrix.cells()) {
        if (cell.target == target) kind = cell.metric;
      }
      t.rows.push_back({source, target, ToString(kind), FormatDouble(entry->mean),
                        FormatDouble(entry->sd), std::to_string(entry->n)});
    }
  }
  return t;
}

namespace {

// One line per `series_column` value across `x_column` categories; cells
// whose metric is 1 - BCE go to the right axis.
LinePlot TransferPlot(const Table& summary, const std::string& x_column,
                      const std::string& series_column, const std::string& title) {
  const int xc = summary.Column(x_column), sc = summary.Column(series_column);
  const int kc = summary.Column("metric_kind"), mc = summary.Column("mean"),
            dc = summary.Column("sd");
  LinePlot plot;
  plot.title = title;
  plot.x_label = x_column + " game";
  plot.y_label = "accuracy";
  plot.x_categories = Distinct(summary, xc);
  bool any_right = false;
  for (const auto& name : Distinct(summary, sc)) {
    PlotSeries left{name, {}, {}, {}, {}, false};
    PlotSeries right{name + " 1-BCE", {}, {}, {}, {}, true};
    for (const auto& row : summary.rows) {
      if (row[sc] != name) continue;
      double x = static_cast<double>(
          std::find(plot.x_categories.begin(), plot.x_categories.end(), row[xc]) -
          plot.x_categories.begin());
      double m = Cell(row[mc]), sd = Cell(row[dc]);
      PlotSeries& s = row[kc] == ToString(MetricKind::kOneMinusBce) ? right : left;
      s.x.push_back(x);
      s.y.push_back(m);
      s.band_low.push_back(m - sd);
      s.band_high.push_back(m + sd);
    }
    if (!left.y.empty()) plot.series.push_back(std::move(left));
    if (!right.y.empty()) {
      any_right = true;
      plot.series.push_back(std::move(right));
    }
  }
  if (any_right) plot.y2_label = "1 - BCE";
  return plot;
}

}  // namespace

std::string SourceOverTargetsFigure(const Table& summary) {
  return RenderLinePlot(TransferPlot(summary, "target", "source",
                                     "Generalisation of each source language over targets"));
}

std::string TargetOverSourcesFigure(const Table& summary) {
  return RenderLinePlot(TransferPlot(summary, "source", "target",
                                     "Generalisation on each target over source languages"));
}

std::string ComponentFigure(const Table& components) {
  const int gc = components.Column("game"), rc = components.Column("rank"),
            zc = components.Column("size"), hc = components.Column("mean_hamming");
  BarPlot plot;
  plot.title = "Largest degenerate components (meanings per message)";
  plot.y_label = "meanings sharing the message";
  for (const auto& game : Distinct(components, gc)) {
    BarGroup group{game, {}};
    for (const auto& row : components.rows) {
      if (row[gc] != game) continue;
      char note[32];
      std::snprintf(note, sizeof(note), "d=%.2f", Cell(row[hc]));
      group.bars.push_back({row[rc], Cell(row[zc]), note});
    }
    plot.groups.push_back(std::move(group));
  }
  return RenderBarPlot(plot);
}

std::string CurveFigure(const Table& curve, const std::string& title,
                        const std::string& y_label) {
  const int gc = curve.Column("game"), ec = curve.Column("epoch"),
            mc = curve.Column("mean"), sc = curve.Column("sd");
  LinePlot plot;
  plot.title = title;
  plot.x_label = "epoch";
  plot.y_label = y_label;
  for (const auto& game : Distinct(curve, gc)) {
    PlotSeries s{game, {}, {}, {}, {}, false};
    for (const auto& row : curve.rows) {
      if (row[gc] != game) continue;
      double m = Cell(row[mc]), sd = Cell(row[sc]);
      s.x.push_back(Cell(row[ec]));
      s.y.push_back(m);
      s.band_low.push_back(m - sd);
      s.band_high.push_back(m + sd);
    }
    plot.series.push_back(std::move(s));
  }
  return RenderLinePlot(plot);
}

}  // namespace emlang
