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

#ifndef EMLANG_TRANSFER_H_
#define EMLANG_TRANSFER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "emlang/agents.h"
#include "emlang/games.h"
#include "emlang/language.h"
#include "emlang/meaning_space.h"
#include "emlang/trainer.h"
#include "emlang/transfer_matrix.h"

namespace emlang {

struct LanguagePair {
  int meaning = 0;
  Message message;

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
};

struct LanguageSplit {
  std::vector<LanguagePair> train;
  std::vector<LanguagePair> test;
  std::uint64_t seed = 0;
};

inline constexpr double kTrainFraction = 0.9;

// Seeded uniform shuffle of the language, then the first floor(0.9 * |L|)
// pairs become the training set. Throws when |L| < 10.
LanguageSplit SplitLanguage(const EmergentLanguage& language, std::uint64_t seed);

struct TransferConfig {
  int hidden_size = 256;
  int embed_size = 256;
  AdamConfig adam;
  int max_epochs = 1000;
  ConvergenceConfig convergence;
  // Batch size for reconstruction targets. Referential targets use
  // min(|D|, |train|) with the contrastive loss.
  int batch_size = 1024;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct TransferListenerResult {
  Listener listener;
  std::vector<EpochDiagnostics> diagnostics;  // message_types and MI unused
  bool converged = false;
};

// Trains a freshly initialized listener on the training pairs only. The
// observer sees the meaning indices of every batch that feeds an update.
TransferListenerResult TrainTransferListener(const LanguageSplit& split,
                                             const GameSpec& target,
                                             const ChannelSpec& channel,
                                             const InputSpace& space,
                                             const TransferConfig& config,
                                             const BatchObserver& observer = {});

// Picks a candidate position for a message given the candidate meanings.
using CandidateChooser =
    std::function<int(const Message& message, const std::vector<int>& candidates)>;

// Referential targets: each test pair is played against |D| - 1 distractors
// drawn without replacement from the full space minus the target, with the
// target at a random position; returns accuracy. Reconstruction targets:
// mean (1 - BCE) over test pairs.
double EvaluateGeneralisation(const Listener& listener, const LanguageSplit& split,
                              const GameSpec& target, const InputSpace& space,
                              Rng& rng);

// Referential evaluation with an arbitrary chooser, sharing the episode
// sampler with EvaluateGeneralisation.
double EvaluateWithChooser(const CandidateChooser& chooser,
                           const std::vector<LanguagePair>& pairs,
                           const GameSpec& target, int space_size, Rng& rng);

struct TransferExperimentConfig {
  TrainRunConfig source;  // game and seed are overwritten per run
  TransferConfig transfer;
  int workers = 1;
};

// A trained source run, as needed by the transfer loop.
struct SourceRun {
  GameSpec game;
  std::uint64_t seed = 0;
  EmergentLanguage language;
};

// Called for every finished source training, before its transfers.
using SourceRunSink = std::function<void(const GameSpec&, std::uint64_t, const TrainResult&)>;

// Trains every (source, seed), splits its language and fills one cell per
// target. Failures of a source run or a single transfer are recorded as
// failed cells.
TransferMatrix RunTransferExperiment(const std::vector<GameSpec>& sources,
                                     const std::vector<GameSpec>& targets,
                                     const std::vector<std::uint64_t>& seeds,
                                     const InputSpace& space,
                                     const TransferExperimentConfig& config,
                                     const SourceRunSink& sink = {});

// Transfer cells for already recorded languages.
TransferMatrix TransferLanguages(const std::vector<SourceRun>& runs,
                                 const std::vector<GameSpec>& targets,
                                 const InputSpace& space,
                                 const TransferExperimentConfig& config);

MetricKind MetricFor(const GameSpec& target);

}  // namespace emlang

#endif  // EMLANG_TRANSFER_H_
