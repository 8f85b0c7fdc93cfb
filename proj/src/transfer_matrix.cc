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

#include "emlang/transfer_matrix.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "emlang/checkpoint.h"
#include "emlang/stats.h"
#include "emlang/trainer.h"

namespace emlang {

std::string ToString(MetricKind kind) {
  return kind == MetricKind::kAccuracy ? "accuracy" : "one_minus_bce";
}

MetricKind ParseMetricKind(const std::string& text) {
  if (text == "accuracy") return MetricKind::kAccuracy;
  if (text == "one_minus_bce") return MetricKind::kOneMinusBce;
  throw std::invalid_argument("unknown metric kind '" + text + "'");
}

void TransferMatrix::Set(TransferCell cell) {
  for (auto& existing : cells_) {
    if (existing.source == cell.source && existing.target == cell.target &&
        existing.seed == cell.seed) {
      existing = std::move(cell);
      return;
    }
  }
  cells_.push_back(std::move(cell));
}

const TransferCell* TransferMatrix::Find(const std::string& source,
                                         const std::string& target,
                                         std::uint64_t seed) const {
  for (const auto& cell : cells_) {
    if (cell.source == source && cell.target == target && cell.seed == seed) {
      return &cell;
    }
  }
  return nullptr;
}

namespace {

template <typename T, typename F>
std::vector<T> Distinct(const std::vector<TransferCell>& cells, F field) {
  std::vector<T> out;
  for (const auto& cell : cells) {
    const T& value = field(cell);
    if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::vector<std::string> TransferMatrix::Sources() const {
  return Distinct<std::string>(cells_, [](const TransferCell& c) { return c.source; });
}

std::vector<std::string> TransferMatrix::Targets() const {
  return Distinct<std::string>(cells_, [](const TransferCell& c) { return c.target; });
}

std::vector<std::uint64_t> TransferMatrix::Seeds() const {
  auto seeds =
      Distinct<std::uint64_t>(cells_, [](const TransferCell& c) { return c.seed; });
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

std::vector<double> TransferMatrix::Values(const std::string& source,
                                           const std::string& target) const {
  std::vector<std::pair<std::uint64_t, double>> rows;
  for (const auto& cell : cells_) {
    if (cell.source == source && cell.target == target && !cell.failed) {
      rows.emplace_back(cell.seed, cell.value);
    }
  }
  std::sort(rows.begin(), rows.end());
  std::vector<double> out;
  for (const auto& [seed, value] : rows) out.push_back(value);
  return out;
}

std::vector<std::string> TransferMatrix::MissingCells(
    const std::vector<std::string>& sources, const std::vector<std::string>& targets,
    const std::vector<std::uint64_t>& seeds) const {
  std::vector<std::string> missing;
  for (const auto& s : sources) {
    for (const auto& t : targets) {
      for (std::uint64_t seed : seeds) {
        const TransferCell* cell = Find(s, t, seed);
        if (cell == nullptr || cell->failed) {
          missing.push_back(s + "/" + t + "/" + std::to_string(seed) +
                            (cell != nullptr ? " (failed: " + cell->error + ")" : ""));
        }
      }
    }
  }
  return missing;
}

void WriteTransferMatrix(const TransferMatrix& matrix, std::ostream& out) {
  out << "source\ttarget\tseed\tmetric_kind\tvalue\tstatus\n";
  for (const auto& cell : matrix.cells()) {
    out << cell.source << '\t' << cell.target << '\t' << cell.seed << '\t'
        << ToString(cell.metric) << '\t'
        << (cell.failed ? std::string("nan") : FormatDouble(cell.value)) << '\t';
    if (cell.failed) {
      std::string message = cell.error;
      std::replace(message.begin(), message.end(), '\t', ' ');
      std::replace(message.begin(), message.end(), '\n', ' ');
      out << "failed:" << message;
    } else {
      out << "ok";
    }
    out << '\n';
  }
}

TransferMatrix ReadTransferMatrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "source\ttarget\tseed\tmetric_kind\tvalue\tstatus") {
    throw std::runtime_error("transfer matrix: unexpected header");
  }
  TransferMatrix matrix;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 6) {
      throw std::runtime_error("transfer matrix line " + std::to_string(line_no) +
                               ": expected 6 fields");
    }
    TransferCell cell;
    cell.source = fields[0];
    cell.target = fields[1];
    cell.seed = std::stoull(fields[2]);
    cell.metric = ParseMetricKind(fields[3]);
    if (fields[5] == "ok") {
      cell.value = ParseDouble(fields[4]);
    } else if (fields[5].starts_with("failed:")) {
      cell.failed = true;
      cell.value = std::nan("");
      cell.error = fields[5].substr(7);
    } else {
      throw std::runtime_error("transfer matrix line " + std::to_string(line_no) +
                               ": bad status '" + fields[5] + "'");
    }
    matrix.Set(std::move(cell));
  }
  return matrix;
}

std::optional<AggregateEntry> Aggregate(const TransferMatrix& matrix,
                                        const std::string& source,
                                        const std::string& target) {
  std::vector<double> values = matrix.Values(source, target);
  if (values.empty()) return std::nullopt;
  return AggregateEntry{Mean(values), SampleStdDev(values),
                        static_cast<int>(values.size())};
}

void WriteAggregateTable(const TransferMatrix& matrix, std::ostream& out) {
  auto targets = matrix.Targets();
  out << "source\tstatistic";
  for (const auto& t : targets) out << '\t' << t;
  out << '\n';
  for (const auto& s : matrix.Sources()) {
    for (const char* stat : {"mean", "sd"}) {
      out << s << '\t' << stat;
      for (const auto& t : targets) {
        auto entry = Aggregate(matrix, s, t);
        out << '\t';
        if (!entry) {
          out << "nan";
        } else {
          out << FormatDouble(std::string(stat) == "mean" ? entry->mean : entry->sd);
        }
      }
      out << '\n';
    }
  }
}

}  // namespace emlang
