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

#ifndef EMLANG_TRANSFER_MATRIX_H_
#define EMLANG_TRANSFER_MATRIX_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace emlang {

enum class MetricKind { kAccuracy, kOneMinusBce };

std::string ToString(MetricKind kind);
MetricKind ParseMetricKind(const std::string& text);

struct TransferCell {
  std::string source;
  std::string target;
  std::uint64_t seed = 0;
  MetricKind metric = MetricKind::kAccuracy;
  double value = 0.0;
  bool failed = false;
  std::string error;  // set when failed
};

// Generalisation performance per (source game, target game, seed). Failed
// cells stay in the matrix, marked, so that completeness can be checked.
class TransferMatrix {
 public:
  // Inserts or replaces the cell with the same (source, target, seed).
  void Set(TransferCell cell);
  const TransferCell* Find(const std::string& source, const std::string& target,
                           std::uint64_t seed) const;

  const std::vector<TransferCell>& cells() const { return cells_; }
  // Distinct values in first-appearance order.
  std::vector<std::string> Sources() const;
  std::vector<std::string> Targets() const;
  std::vector<std::uint64_t> Seeds() const;

  // Successful values for (source, target), ordered by seed.
  std::vector<double> Values(const std::string& source, const std::string& target) const;

  // "source/target/seed" for every cell of the product that is absent or
  // failed.
  std::vector<std::string> MissingCells(const std::vector<std::string>& sources,
                                        const std::vector<std::string>& targets,
                                        const std::vector<std::uint64_t>& seeds) const;

 private:
  std::vector<TransferCell> cells_;
};

// Columns: source, target, seed, metric_kind, value, status.
void WriteTransferMatrix(const TransferMatrix& matrix, std::ostream& out);
TransferMatrix ReadTransferMatrix(std::istream& in);

struct AggregateEntry {
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;
};

std::optional<AggregateEntry> Aggregate(const TransferMatrix& matrix,
                                        const std::string& source,
                                        const std::string& target);

// Source rows with a "mean" and a "sd" line each, one column per target.
void WriteAggregateTable(const TransferMatrix& matrix, std::ostream& out);

}  // namespace emlang

#endif  // EMLANG_TRANSFER_MATRIX_H_
