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

#ifndef EMLANG_REPORT_H_
#define EMLANG_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "emlang/analysis.h"
#include "emlang/transfer_matrix.h"

namespace emlang {

// Tab-separated table with a header row. Cells never contain tabs or
// newlines.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int Column(const std::string& name) const;  // throws when absent
};

std::string TableToText(const Table& table);
Table TableFromText(const std::string& text, const std::string& name = "table");
void WriteTable(const Table& table, const std::filesystem::path& path);
Table ReadTable(const std::filesystem::path& path);

// source_a, source_b, relation
Table VerdictTable(const OrderReport& report);
// source_a, source_b, target, mean_a, mean_b, p_value, direction
Table EvidenceTable(const OrderReport& report);
std::string ChainText(const OrderReport& report);

// source, mean, p25, p75, n
Table DegeneracyTable(const std::vector<DegeneracyRow>& rows);

struct InformationRow {
  std::string game;
  std::uint64_t seed = 0;
  int message_types = 0;
  double mutual_information = 0.0;
  double type_sum_information = 0.0;
};
// game, seed, message_types, mutual_information, type_sum_information
Table InformationTable(const std::vector<InformationRow>& rows);
// game, mean_mutual_information, mean_message_types, n
Table InformationSummary(const std::vector<InformationRow>& rows);

struct ComponentRecord {
  std::string game;
  std::uint64_t seed = 0;
  std::string stage;  // "initial" or "final"
  std::vector<DegenerateComponent> components;
};
// game, seed, stage, rank, message, size, mean_hamming, mean_euclidean
Table ComponentTable(const std::vector<ComponentRecord>& records);
// game, seed, initial_mean_distance, final_mean_distance
Table ComponentDistanceTable(const std::vector<ComponentRecord>& records);

// game, epoch, mean, sd
Table CurveTable(const std::map<std::string, std::vector<CurvePoint>>& curves);

// source, target, metric_kind, mean, sd, n over successful cells.
Table TransferSummaryTable(const TransferMatrix& matrix);

// Figures. Each takes the data table that is written next to it.
std::string SourceOverTargetsFigure(const Table& summary);
std::string TargetOverSourcesFigure(const Table& summary);
std::string ComponentFigure(const Table& components);
std::string CurveFigure(const Table& curve, const std::string& title,
                        const std::string& y_label);

}  // namespace emlang

#endif  // EMLANG_REPORT_H_
