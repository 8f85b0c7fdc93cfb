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

#include "emlang/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "emlang/analysis.h"
#include "emlang/checkpoint.h"

namespace emlang {

void ConvergenceConfig::Validate() const {
  if (window < 1 || patience < 1 || !(tolerance >= 0.0)) {
    throw std::invalid_argument("ConvergenceConfig: window and patience must be >= 1");
  }
  if (min_epochs < 0) throw std::invalid_argument("ConvergenceConfig: min_epochs must be >= 0");
}

bool HasConverged(std::span<const EpochDiagnostics> history,
                  const ConvergenceConfig& config) {
  const int n = static_cast<int>(history.size());
  if (n < config.window || n < config.min_epochs) return false;
  double best = -std::numeric_limits<double>::infinity();
  int stale = 0;
  double running = 0.0;
  for (int e = 0; e < n; ++e) {
    running += history[e].metric;
    if (e >= config.window) running -= history[e - config.window].metric;
    if (e + 1 < config.window) continue;
    double average = running / config.window;
    if (average >= best + config.tolerance) {
      best = average;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return stale >= config.patience;
}

void TrainRunConfig::Validate(const InputSpace& space) const {
  game.Validate(space.size());
  channel.Validate();
  adam.Validate();
  convergence.Validate();
  if (hidden_size < 1 || embed_size < 1) {
    throw std::invalid_argument("TrainRunConfig: hidden and embedding sizes must be >= 1");
  }
  if (max_epochs < 1) throw std::invalid_argument("TrainRunConfig: max_epochs must be >= 1");
}

AgentShape TrainRunConfig::Shape(const InputSpace& space) const {
  return AgentShape{space.spec().FlatSize(), hidden_size, embed_size};
}

DivergenceError::DivergenceError(int epoch, std::vector<EpochDiagnostics> history)
    : std::runtime_error("training diverged (non-finite loss) at epoch " +
                         std::to_string(epoch)),
      epoch_(epoch),
      history_(std::move(history)) {}

std::pair<Speaker, Listener> InitializeAgents(const TrainRunConfig& config,
                                              const InputSpace& space) {
  config.Validate(space);
  AgentShape shape = config.Shape(space);
  Speaker speaker(shape, config.channel);
  Listener listener(shape, config.channel, config.game.Head());
  Rng init(DeriveSeed(config.seed, "agent-init"));
  speaker.Init(init);
  listener.Init(init);
  return {std::move(speaker), std::move(listener)};
}

std::vector<std::vector<int>> MakeBatches(const std::vector<int>& order,
                                          int batch_size, bool exact) {
  std::vector<std::vector<int>> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(batch_size));
    if (exact && end - start < static_cast<std::size_t>(batch_size)) break;
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

TrainResult TrainGame(const TrainRunConfig& config, const InputSpace& space,
                      const BatchObserver& observer) {
  auto [speaker, listener] = InitializeAgents(config, space);
  TrainResult result{std::move(speaker), std::move(listener), {}, {}, {}, false};
  result.initial_language =
      RecordLanguage(result.speaker, space, config.game, config.seed, 0);

  Rng rng(DeriveSeed(config.seed, "train"));
  Adam optimizer(config.adam);
  auto params = [&](const ParamVisitor& visit) {
    result.speaker.VisitParams(visit);
    result.listener.VisitParams(visit);
  };
  const bool contrastive = config.game.IsReferential() &&
                           config.game.loss == LossVariant::kContrastive;
  const int batch_size = std::min(config.game.EffectiveBatchSize(), space.size());
  std::vector<int> order(space.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Shuffle(order, rng);
    double loss_sum = 0.0;
    double metric_sum = 0.0;
    int seen = 0;
    for (const auto& targets : MakeBatches(order, batch_size, contrastive)) {
      EpisodeBatch batch = MakeEpisodeBatch(config.game, targets, space.size(), rng);
      if (observer) {
        observer(batch.targets);
        for (const auto& set : batch.candidate_sets) observer(set);
      }
      ZeroGrads(params);
      StepStats stats = GameStep(result.speaker, result.listener, config.game, space,
                                 batch, rng);
      if (!std::isfinite(stats.loss)) {
        throw DivergenceError(epoch, result.diagnostics);
      }
      optimizer.Step(params);
      loss_sum += stats.loss * stats.count;
      metric_sum += stats.metric * stats.count;
      seen += stats.count;
    }
    EmergentLanguage language =
        RecordLanguage(result.speaker, space, config.game, config.seed, epoch);
    EpochDiagnostics d;
    d.epoch = epoch;
    d.loss = loss_sum / seen;
    d.metric = metric_sum / seen;
    d.message_types = CountMessageTypes(language);
    d.mutual_information = PaperMutualInformation(language);
    result.diagnostics.push_back(d);
    result.language = std::move(language);
    if (HasConverged(result.diagnostics, config.convergence)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::string FormatDouble(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void WriteDiagnostics(const std::vector<EpochDiagnostics>& diagnostics,
                      std::ostream& out) {
  out << "epoch\tloss\tmetric\tmessage_types\tmutual_information\n";
  for (const auto& d : diagnostics) {
    out << d.epoch << '\t' << FormatDouble(d.loss) << '\t' << FormatDouble(d.metric)
        << '\t' << d.message_types << '\t' << FormatDouble(d.mutual_information)
        << '\n';
  }
}

std::vector<EpochDiagnostics> ReadDiagnostics(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "epoch\tloss\tmetric\tmessage_types\tmutual_information") {
    throw std::runtime_error("diagnostics: unexpected header");
  }
  std::vector<EpochDiagnostics> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream s(line);
    EpochDiagnostics d;
    std::string loss, metric, mi;
    if (!(s >> d.epoch >> loss >> metric >> d.message_types >> mi)) {
      throw std::runtime_error("diagnostics: malformed line " + std::to_string(line_no));
    }
    d.loss = ParseDouble(loss);
    d.metric = ParseDouble(metric);
    d.mutual_information = ParseDouble(mi);
    out.push_back(d);
  }
  return out;
}

}  // namespace emlang
