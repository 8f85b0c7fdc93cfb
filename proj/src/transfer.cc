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

#include "emlang/transfer.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "emlang/parallel.h"

namespace emlang {

LanguageSplit SplitLanguage(const EmergentLanguage& language, std::uint64_t seed) {
  const int n = language.size();
  if (n < 10) {
    throw std::invalid_argument("split: language has " + std::to_string(n) +
                                " pairs, at least 10 are required");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  Shuffle(order, rng);
  const int n_train = static_cast<int>(std::floor(kTrainFraction * n));
  LanguageSplit split;
  split.seed = seed;
  for (int k = 0; k < n; ++k) {
    LanguagePair pair{order[k], language.messages[order[k]]};
    (k < n_train ? split.train : split.test).push_back(std::move(pair));
  }
  return split;
}

void TransferConfig::Validate() const {
  adam.Validate();
  convergence.Validate();
  if (hidden_size < 1 || embed_size < 1 || batch_size < 1 || max_epochs < 1) {
    throw std::invalid_argument(
        "TransferConfig: sizes, batch size and max_epochs must be >= 1");
  }
}

MetricKind MetricFor(const GameSpec& target) {
  return target.IsReferential() ? MetricKind::kAccuracy : MetricKind::kOneMinusBce;
}

namespace {

void CheckChannel(const std::vector<LanguagePair>& pairs, const ChannelSpec& channel) {
  for (const auto& p : pairs) {
    if (static_cast<int>(p.message.tokens.size()) != channel.message_length) {
      throw std::invalid_argument("transfer: message length does not match the channel");
    }
    for (int t : p.message.tokens) {
      if (t < 0 || t >= channel.vocab_size) {
        throw std::invalid_argument("transfer: token outside the channel vocabulary");
      }
    }
  }
}

}  // namespace

TransferListenerResult TrainTransferListener(const LanguageSplit& split,
                                             const GameSpec& target,
                                             const ChannelSpec& channel,
                                             const InputSpace& space,
                                             const TransferConfig& config,
                                             const BatchObserver& observer) {
  config.Validate();
  channel.Validate();
  if (split.train.empty()) throw std::invalid_argument("transfer: empty training split");
  CheckChannel(split.train, channel);
  if (target.IsReferential() && target.candidates > space.size()) {
    throw std::invalid_argument("transfer: target " + target.Id() +
                                " needs more candidates than the space holds");
  }

  AgentShape shape{space.spec().FlatSize(), config.hidden_size, config.embed_size};
  TransferListenerResult result;
  result.listener = Listener(shape, channel, target.Head());
  Rng init(DeriveSeed(config.seed, "transfer-listener-init"));
  result.listener.Init(init);
  Rng rng(DeriveSeed(config.seed, "transfer-train"));
  Adam optimizer(config.adam);
  auto params = [&](const ParamVisitor& visit) { result.listener.VisitParams(visit); };

  GameSpec game = target;
  game.loss = LossVariant::kContrastive;
  const int n_train = static_cast<int>(split.train.size());
  const bool referential = target.IsReferential();
  const int batch_size = referential ? std::min(target.candidates, n_train)
                                     : std::min(config.batch_size, n_train);
  std::vector<int> order(n_train);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Shuffle(order, rng);
    double loss_sum = 0.0, metric_sum = 0.0;
    int seen = 0;
    for (const auto& rows : MakeBatches(order, batch_size, referential)) {
      EpisodeBatch batch;
      std::vector<Message> messages;
      for (int r : rows) {
        batch.targets.push_back(split.train[r].meaning);
        messages.push_back(split.train[r].message);
      }
      if (observer) observer(batch.targets);
      ZeroGrads(params);
      std::vector<Matrix> d_tokens;
      StepStats stats = ListenerLoss(result.listener, game, space, batch,
                                     MessagesToOneHot(messages, channel), &d_tokens);
      if (!std::isfinite(stats.loss)) throw DivergenceError(epoch, result.diagnostics);
      optimizer.Step(params);
      loss_sum += stats.loss * stats.count;
      metric_sum += stats.metric * stats.count;
      seen += stats.count;
    }
    EpochDiagnostics d;
    d.epoch = epoch;
    d.loss = loss_sum / seen;
    d.metric = metric_sum / seen;
    result.diagnostics.push_back(d);
    if (HasConverged(result.diagnostics, config.convergence)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double EvaluateWithChooser(const CandidateChooser& chooser,
                           const std::vector<LanguagePair>& pairs,
                           const GameSpec& target, int space_size, Rng& rng) {
  if (!target.IsReferential()) {
    throw std::invalid_argument("EvaluateWithChooser: referential targets only");
  }
  if (pairs.empty()) throw std::invalid_argument("evaluation: no test pairs");
  int correct = 0;
  for (const auto& pair : pairs) {
    std::vector<int> candidates =
        SampleWithoutReplacement(space_size, target.candidates - 1, pair.meaning, rng);
    int position = static_cast<int>(UniformIndex(rng, candidates.size() + 1));
    candidates.insert(candidates.begin() + position, pair.meaning);
    correct += chooser(pair.message, candidates) == position;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

double EvaluateGeneralisation(const Listener& listener, const LanguageSplit& split,
                              const GameSpec& target, const InputSpace& space,
                              Rng& rng) {
  if (split.test.empty()) throw std::invalid_argument("evaluation: empty test split");
  CheckChannel(split.test, listener.channel());
  std::vector<Message> messages;
  for (const auto& p : split.test) messages.push_back(p.message);
  Matrix h = listener.EncodeMessages(messages);

  if (!target.IsReferential()) {
    Matrix logits = listener.Reconstruct(h);
    double total = 0.0;
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      total += ReconstructionScore(space.flat_matrix().col(split.test[i].meaning),
                                   logits.col(static_cast<Eigen::Index>(i)));
    }
    return total / static_cast<double>(split.test.size());
  }

  // Encoding the whole space once is cheaper than per-episode encodings.
  Matrix encoded = listener.EncodeCandidates(space.flat_matrix());
  std::size_t next = 0;
  CandidateChooser chooser = [&](const Message&, const std::vector<int>& candidates) {
    Vector scores(static_cast<Eigen::Index>(candidates.size()));
    const auto message = h.col(static_cast<Eigen::Index>(next++));
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      scores(static_cast<Eigen::Index>(j)) = encoded.col(candidates[j]).dot(message);
    }
    return ArgmaxLowest(scores);
  };
  return EvaluateWithChooser(chooser, split.test, target, space.size(), rng);
}

namespace {

std::string CellTag(const std::string& source, const std::string& target) {
  return source + "->" + target;
}

std::vector<TransferCell> TransferOne(const SourceRun& run,
                                      const std::vector<GameSpec>& targets,
                                      const InputSpace& space,
                                      const TransferExperimentConfig& config) {
  const std::string source = run.game.Id();
  std::vector<TransferCell> cells;
  LanguageSplit split;
  std::string split_error;
  try {
    split = SplitLanguage(run.language, DeriveSeed(run.seed, "split/" + source));
  } catch (const std::exception& e) {
    split_error = e.what();
  }
  for (const GameSpec& target : targets) {
    TransferCell cell;
    cell.source = source;
    cell.target = target.Id();
    cell.seed = run.seed;
    cell.metric = MetricFor(target);
    try {
      if (!split_error.empty()) throw std::runtime_error(split_error);
      TransferConfig tc = config.transfer;
      tc.seed = DeriveSeed(run.seed, "transfer/" + CellTag(source, cell.target));
      TransferListenerResult trained = TrainTransferListener(
          split, target, run.language.channel, space, tc);
      Rng eval(DeriveSeed(run.seed, "evaluate/" + CellTag(source, cell.target)));
      cell.value = EvaluateGeneralisation(trained.listener, split, target, space, eval);
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace

TransferMatrix TransferLanguages(const std::vector<SourceRun>& runs,
                                 const std::vector<GameSpec>& targets,
                                 const InputSpace& space,
                                 const TransferExperimentConfig& config) {
  std::vector<std::vector<TransferCell>> results(runs.size());
  ParallelFor(static_cast<int>(runs.size()), config.workers, [&](int i) {
    results[i] = TransferOne(runs[i], targets, space, config);
  });
  TransferMatrix matrix;
  for (auto& cells : results) {
    for (auto& cell : cells) matrix.Set(std::move(cell));
  }
  return matrix;
}

TransferMatrix RunTransferExperiment(const std::vector<GameSpec>& sources,
                                     const std::vector<GameSpec>& targets,
                                     const std::vector<std::uint64_t>& seeds,
                                     const InputSpace& space,
                                     const TransferExperimentConfig& config,
                                     const SourceRunSink& sink) {
  struct Job {
    GameSpec game;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& source : sources) {
    for (auto seed : seeds) jobs.push_back({source, seed});
  }
  std::vector<std::vector<TransferCell>> results(jobs.size());
  std::mutex sink_mutex;
  ParallelFor(static_cast<int>(jobs.size()), config.workers, [&](int i) {
    const Job& job = jobs[i];
    TrainRunConfig rc = config.source;
    rc.game = job.game;
    rc.seed = job.seed;
    try {
      TrainResult trained = TrainGame(rc, space);
      if (sink) {
        std::lock_guard<std::mutex> lock(sink_mutex);
        sink(job.game, job.seed, trained);
      }
      SourceRun run{job.game, job.seed, std::move(trained.language)};
      TransferExperimentConfig single = config;
      single.workers = 1;
      results[i] = TransferOne(run, targets, space, single);
    } catch (const std::exception& e) {
      for (const auto& target : targets) {
        TransferCell cell;
        cell.source = job.game.Id();
        cell.target = target.Id();
        cell.seed = job.seed;
        cell.metric = MetricFor(target);
        cell.failed = true;
        cell.error = std::string("source training failed: ") + e.what();
        results[i].push_back(std::move(cell));
      }
    }
  });
  TransferMatrix matrix;
  for (auto& cells : results) {
    for (auto& cell : cells) matrix.Set(std::move(cell));
  }
  return matrix;
}

}  // namespace emlang
