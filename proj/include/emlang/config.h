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

#ifndef EMLANG_CONFIG_H_
#define EMLANG_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emlang/agents.h"
#include "emlang/analysis.h"
#include "emlang/games.h"
#include "emlang/meaning_space.h"
#include "emlang/trainer.h"
#include "emlang/transfer.h"

namespace emlang {

enum class Scale { kPaper, kDesk };

std::string ToString(Scale scale);
Scale ParseScale(const std::string& text);

// Capacity profiles: "default", "channel-8x20", "hidden-128" and
// "channel-8x20+hidden-128".
const std::vector<std::string>& ProfileNames();

struct ExperimentConfig {
  Scale scale = Scale::kDesk;
  std::string profile = "default";
  AttributeSpec attributes;
  std::int64_t max_space_size = 1'000'000;
  ChannelSpec channel;
  int hidden_size = 64;
  int embed_size = 64;

  double learning_rate = 1e-3;
  int batch_size = 100;
  int max_epochs = 1000;
  ConvergenceConfig convergence;

  int transfer_max_epochs = 1000;
  int transfer_batch_size = 100;
  bool train_missing = false;

  std::vector<std::string> games;
  std::vector<std::string> sources;  // defaults to games
  std::vector<std::string> targets;  // defaults to games
  std::vector<std::uint64_t> seeds;

  double alpha = 0.05;
  SignificanceTest test = SignificanceTest::kWelch;
  int top_k = 10;

  std::string output_dir = "out";

  // Throws ConfigError naming the offending key.
  void Validate() const;

  std::vector<GameSpec> GameSpecs(const std::vector<std::string>& ids) const;
  GameSpec Game(const std::string& id) const;
  TrainRunConfig Training(const std::string& game, std::uint64_t seed) const;
  TransferConfig Transfer() const;
  TransferExperimentConfig Experiment(int workers) const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExperimentConfig Preset(Scale scale);
// Applies a named capacity profile on top of `config`.
void ApplyProfile(ExperimentConfig& config, const std::string& profile);

// Format, one "key = value" per line, '#' starts a comment:
//
//   version = 1
//   scale = desk
//   games = recon, refer2, refer100, refer1000
//   seeds = 0, 1, 2, 3
//
// The first setting must be "version = 1". The scale preset and the
// profile are applied first, then every other key in file order. Unknown
// or repeated keys are errors that carry the line number.
ExperimentConfig ParseConfig(const std::string& text,
                             std::optional<Scale> scale_override = std::nullopt,
                             const std::string& source_name = "config");
ExperimentConfig LoadConfig(const std::string& path,
                            std::optional<Scale> scale_override = std::nullopt);

// Canonical text with every resolved setting, parseable by ParseConfig.
std::string ConfigToText(const ExperimentConfig& config);

// Stable hash of the settings that influence a single run (space, channel,
// agents, training and transfer budgets), as 16 hex digits. The roster,
// seeds, analysis settings and output directory are left out so runs can be
// shared between experiments.
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace emlang

#endif  // EMLANG_CONFIG_H_
