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

#ifndef EMLANG_PIPELINE_H_
#define EMLANG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "emlang/config.h"
#include "emlang/trainer.h"
#include "emlang/transfer_matrix.h"

namespace emlang {

// Output layout, a pure function of (config hash, game id, seed):
//
//   <output.dir>/<hash>/config.txt
//   <output.dir>/<hash>/<game>/seed-<n>/{checkpoint.txt, language.tsv,
//                                        initial_language.tsv, diagnostics.tsv}
//   <output.dir>/<hash>/transfer/{matrix.tsv, aggregate.tsv}
//   <output.dir>/<hash>/analysis/*.tsv, chain.txt
//   <output.dir>/<hash>/figures/*.svg with one data table per figure
std::filesystem::path ExperimentRoot(const ExperimentConfig& config);
std::filesystem::path RunDirectory(const ExperimentConfig& config, const std::string& game,
                                   std::uint64_t seed);

struct RunFiles {
  std::filesystem::path checkpoint;
  std::filesystem::path language;
  std::filesystem::path initial_language;
  std::filesystem::path diagnostics;
};
RunFiles FilesFor(const ExperimentConfig& config, const std::string& game,
                  std::uint64_t seed);

// Inputs a command needs but cannot find, one entry per missing item.
class MissingInputsError : public std::runtime_error {
 public:
  explicit MissingInputsError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// Training diverged; the partial diagnostics were written to `path`.
class RunDivergedError : public std::runtime_error {
 public:
  RunDivergedError(const std::string& message, std::filesystem::path path)
      : std::runtime_error(message), path_(std::move(path)) {}
  const std::filesystem::path& diagnostics_path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

// Trains one (game, seed) run and writes its artifacts.
TrainResult TrainAndStore(const ExperimentConfig& config, const std::string& game,
                          std::uint64_t seed);

// Trains every (game, seed) pair on up to `workers` threads.
void TrainMany(const ExperimentConfig& config, const std::vector<std::string>& games,
               const std::vector<std::uint64_t>& seeds, int workers);

std::vector<std::string> SourceIds(const ExperimentConfig& config);
std::vector<std::string> TargetIds(const ExperimentConfig& config);

// Fills the transfer matrix from recorded source languages (training the
// missing ones when transfer.train_missing is set) and writes matrix.tsv and
// aggregate.tsv.
TransferMatrix RunTransferCommand(const ExperimentConfig& config, int workers);

// Writes verdicts (when there are at least two sources), the chain summary,
// degeneracy, mutual information, degenerate-component and curve reports.
void RunAnalyzeCommand(const ExperimentConfig& config);

// Renders the five figures from the transfer and analysis outputs.
std::vector<std::filesystem::path> RunReportCommand(const ExperimentConfig& config);

}  // namespace emlang

#endif  // EMLANG_PIPELINE_H_
