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

#ifndef EMLANG_TRAINER_H_
#define EMLANG_TRAINER_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "emlang/agents.h"
#include "emlang/games.h"
#include "emlang/language.h"
#include "emlang/meaning_space.h"
#include "emlang/nn.h"

namespace emlang {

// Stop once the moving average of the training metric (window `window`)
// has failed to improve on its best value by at least `tolerance` for
// `patience` consecutive epochs, but never before `min_epochs`.
struct ConvergenceConfig {
  int window = 20;
  int patience = 50;
  double tolerance = 1e-3;
  int min_epochs = 0;

  void Validate() const;
};

struct EpochDiagnostics {
  int epoch = 0;
  double loss = 0.0;
  double metric = 0.0;  // accuracy (referential) or 1 - BCE (reconstruction)
  int message_types = 0;
  double mutual_information = 0.0;

  friend bool operator==(const EpochDiagnostics&, const EpochDiagnostics&) = default;
};

// Pure function of the metric history.
bool HasConverged(std::span<const EpochDiagnostics> history,
                  const ConvergenceConfig& config);

struct TrainRunConfig {
  GameSpec game;
  ChannelSpec channel;
  int hidden_size = 256;
  int embed_size = 256;
  AdamConfig adam;
  int max_epochs = 1000;
  ConvergenceConfig convergence;
  std::uint64_t seed = 0;

  void Validate(const InputSpace& space) const;
  AgentShape Shape(const InputSpace& space) const;
};

struct TrainResult {
  Speaker speaker;
  Listener listener;
  EmergentLanguage initial_language;  // recorded before the first update
  EmergentLanguage language;          // recorded after the last epoch
  std::vector<EpochDiagnostics> diagnostics;
  bool converged = false;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int epoch, std::vector<EpochDiagnostics> history);
  int epoch() const { return epoch_; }
  const std::vector<EpochDiagnostics>& history() const { return history_; }

 private:
  int epoch_;
  std::vector<EpochDiagnostics> history_;
};

// Called with the meaning indices of every batch that feeds a parameter
// update (targets and any candidates).
using BatchObserver = std::function<void(std::span<const int> meanings)>;

// Freshly initialized speaker and listener for a run; deterministic in the
// config seed.
std::pair<Speaker, Listener> InitializeAgents(const TrainRunConfig& config,
                                              const InputSpace& space);

// Trains on full shuffled passes over the space until HasConverged or
// max_epochs. Throws DivergenceError on a non-finite loss.
TrainResult TrainGame(const TrainRunConfig& config, const InputSpace& space,
                      const BatchObserver& observer = {});

// Splits a permutation of meanings into batches. With `exact` set, a trailing
// short batch is dropped.
std::vector<std::vector<int>> MakeBatches(const std::vector<int>& order,
                                          int batch_size, bool exact);

// Tab-separated, one row per epoch, full round-trip precision.
void WriteDiagnostics(const std::vector<EpochDiagnostics>& diagnostics,
                      std::ostream& out);
std::vector<EpochDiagnostics> ReadDiagnostics(std::istream& in);

std::string FormatDouble(double value);

}  // namespace emlang

#endif  // EMLANG_TRAINER_H_
