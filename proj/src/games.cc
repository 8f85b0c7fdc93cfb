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

#include "emlang/games.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace emlang {

void GameSpec::Validate(int space_size) const {
  if (kind == GameKind::kReferential) {
    if (candidates < 2) {
      throw std::invalid_argument("GameSpec: referential games need |D| >= 2");
    }
    if (candidates > space_size) {
      throw std::invalid_argument("GameSpec: |D| = " + std::to_string(candidates) +
                                  " exceeds the input space size " +
                                  std::to_string(space_size));
    }
  }
  if (batch_size < 1) throw std::invalid_argument("GameSpec: batch size must be >= 1");
}

int GameSpec::EffectiveBatchSize() const {
  if (kind == GameKind::kReferential && loss == LossVariant::kContrastive) {
    return candidates;
  }
  return batch_size;
}

std::string GameSpec::Id() const {
  if (kind == GameKind::kReconstruction) return "recon";
  std::string id = "refer" + std::to_string(candidates);
  if (loss == LossVariant::kConventional) id += "-conv";
  return id;
}

ListenerHead GameSpec::Head() const {
  return kind == GameKind::kReferential ? ListenerHead::kReferential
                                        : ListenerHead::kReconstruction;
}

GameSpec ParseGameId(std::string_view id, int batch_size) {
  GameSpec spec;
  spec.batch_size = batch_size;
  if (id == "recon") {
    spec.kind = GameKind::kReconstruction;
    spec.candidates = 0;
    return spec;
  }
  constexpr std::string_view kPrefix = "refer";
  constexpr std::string_view kConv = "-conv";
  if (!id.starts_with(kPrefix)) {
    throw std::invalid_argument("unknown game id '" + std::string(id) + "'");
  }
  std::string_view rest = id.substr(kPrefix.size());
  if (rest.ends_with(kConv)) {
    spec.loss = LossVariant::kConventional;
    rest.remove_suffix(kConv.size());
  }
  int candidates = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), candidates);
  if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size() ||
      candidates < 2) {
    throw std::invalid_argument("unknown game id '" + std::string(id) + "'");
  }
  spec.kind = GameKind::kReferential;
  spec.candidates = candidates;
  return spec;
}

Vector CandidateScores(const Vector& message_embedding,
                       const Matrix& candidate_embeddings) {
  if (candidate_embeddings.cols() == 0) {
    throw std::invalid_argument("CandidateScores: empty candidate list");
  }
  return candidate_embeddings.transpose() * message_embedding;
}

Vector CandidateScores(const Listener& listener, const Vector& message_embedding,
                       const Matrix& candidate_inputs) {
  if (candidate_inputs.cols() == 0) {
    throw std::invalid_argument("CandidateScores: empty candidate list");
  }
  return CandidateScores(message_embedding, listener.EncodeCandidates(candidate_inputs));
}

int ArgmaxLowest(const Vector& values) {
  int best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i) > values(best)) best = static_cast<int>(i);
  }
  return best;
}

ContrastiveResult ContrastiveLoss(const Matrix& message_embeddings,
                                  const Matrix& candidate_embeddings) {
  const Eigen::Index batch = message_embeddings.cols();
  if (batch == 0) throw std::invalid_argument("ContrastiveLoss: empty batch");
  if (candidate_embeddings.cols() != batch ||
      candidate_embeddings.rows() != message_embeddings.rows()) {
    throw std::invalid_argument("ContrastiveLoss: embedding shapes differ");
  }
  // scores(j, i) = h_i . f_j, so column i is item i's distribution. Built per
  // column with the same product as CandidateScores so that every item's
  // loss is bit-identical to the conventional loss on the same candidates.
  Matrix scores(batch, batch);
  for (Eigen::Index i = 0; i < batch; ++i) {
    scores.col(i) = CandidateScores(Vector(message_embeddings.col(i)), candidate_embeddings);
  }
  Matrix probs = SoftmaxColumns(scores);
  ContrastiveResult result;
  result.item_losses.resize(batch);
  for (Eigen::Index i = 0; i < batch; ++i) {
    double mx = scores.col(i).maxCoeff();
    double lse = mx + std::log((scores.col(i).array() - mx).exp().sum());
    result.item_losses(i) = lse - scores(i, i);
    result.loss += result.item_losses(i);
    if (ArgmaxLowest(scores.col(i)) == i) ++result.correct;
  }
  result.loss /= static_cast<double>(batch);
  Matrix d_scores = probs;
  d_scores.diagonal().array() -= 1.0;
  d_scores /= static_cast<double>(batch);
  result.d_messages = candidate_embeddings * d_scores;
  result.d_candidates = message_embeddings * d_scores.transpose();
  return result;
}

ReferentialResult ConventionalReferentialLoss(const Vector& message_embedding,
                                              int target_index,
                                              const Matrix& candidate_embeddings) {
  if (target_index < 0 || target_index >= candidate_embeddings.cols()) {
    throw std::invalid_argument("ConventionalReferentialLoss: target index " +
                                std::to_string(target_index) +
                                " is not among the candidates");
  }
  Vector scores = CandidateScores(message_embedding, candidate_embeddings);
  ReferentialResult result;
  double mx = scores.maxCoeff();
  double lse = mx + std::log((scores.array() - mx).exp().sum());
  result.loss = lse - scores(target_index);
  result.probabilities = Softmax(scores);
  Vector d_scores = result.probabilities;
  d_scores(target_index) -= 1.0;
  result.d_message = candidate_embeddings * d_scores;
  result.d_candidates = message_embedding * d_scores.transpose();
  return result;
}

ReconstructionResult ReconstructionLoss(const Matrix& targets, const Matrix& logits) {
  if (targets.rows() != logits.rows() || targets.cols() != logits.cols()) {
    throw std::invalid_argument("ReconstructionLoss: dimension mismatch");
  }
  if (!logits.allFinite()) {
    throw std::invalid_argument("ReconstructionLoss: logits must be finite");
  }
  const double norm = static_cast<double>(targets.rows() * targets.cols());
  ReconstructionResult result;
  result.d_logits.resize(logits.rows(), logits.cols());
  double total = 0.0;
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    for (Eigen::Index k = 0; k < logits.rows(); ++k) {
      double raw = 1.0 / (1.0 + std::exp(-logits(k, j)));
      double p = std::clamp(raw, kProbabilityClamp, 1.0 - kProbabilityClamp);
      double x = targets(k, j);
      total -= x * std::log(p) + (1.0 - x) * std::log(1.0 - p);
      bool clamped = raw != p;
      result.d_logits(k, j) = clamped ? 0.0 : (p - x) / norm;
    }
  }
  result.loss = total / norm;
  return result;
}

double BinaryCrossEntropy(std::span<const double> targets,
                          std::span<const double> probabilities) {
  if (targets.size() != probabilities.size() || targets.empty()) {
    throw std::invalid_argument("BinaryCrossEntropy: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    double p = std::clamp(probabilities[k], kProbabilityClamp, 1.0 - kProbabilityClamp);
    total -= targets[k] * std::log(p) + (1.0 - targets[k]) * std::log(1.0 - p);
  }
  return total / static_cast<double>(targets.size());
}

double ReconstructionScore(const Vector& target, const Vector& logits) {
  return 1.0 - ReconstructionLoss(target, logits).loss;
}

double ReferentialAccuracy(const std::vector<Vector>& choice_distributions,
                           const std::vector<int>& target_indices) {
  if (choice_distributions.empty() ||
      choice_distributions.size() != target_indices.size()) {
    throw std::invalid_argument("ReferentialAccuracy: empty or mismatched batch");
  }
  int correct = 0;
  for (std::size_t i = 0; i < choice_distributions.size(); ++i) {
    correct += ArgmaxLowest(choice_distributions[i]) == target_indices[i];
  }
  return static_cast<double>(correct) / static_cast<double>(choice_distributions.size());
}

EpisodeBatch MakeEpisodeBatch(const GameSpec& game, std::span<const int> targets,
                              int space_size, Rng& rng) {
  EpisodeBatch batch;
  batch.targets.assign(targets.begin(), targets.end());
  if (game.kind != GameKind::kReferential || game.loss != LossVariant::kConventional) {
    return batch;
  }
  batch.candidate_sets.reserve(targets.size());
  batch.target_positions.reserve(targets.size());
  for (int target : targets) {
    std::vector<int> set =
        SampleWithoutReplacement(space_size, game.candidates - 1, target, rng);
    int position = static_cast<int>(UniformIndex(rng, set.size() + 1));
    set.insert(set.begin() + position, target);
    batch.candidate_sets.push_back(std::move(set));
    batch.target_positions.push_back(position);
  }
  return batch;
}

StepStats ListenerLoss(Listener& listener, const GameSpec& game,
                       const InputSpace& space, const EpisodeBatch& batch,
                       const std::vector<Matrix>& tokens,
                       std::vector<Matrix>* d_tokens) {
  const bool backward = d_tokens != nullptr;
  EncoderTrace trace;
  Matrix h = listener.Encode(tokens, backward ? &trace : nullptr);
  const int n = static_cast<int>(batch.targets.size());
  Matrix targets = space.Gather(batch.targets);
  StepStats stats;
  stats.count = n;
  Matrix dh;

  if (game.kind == GameKind::kReconstruction) {
    Matrix logits = listener.Reconstruct(h);
    ReconstructionResult r = ReconstructionLoss(targets, logits);
    stats.loss = r.loss;
    stats.metric = 1.0 - r.loss;
    if (backward) dh = listener.BackwardReconstruct(h, r.d_logits);
  } else if (game.loss == LossVariant::kContrastive) {
    Matrix candidates = listener.EncodeCandidates(targets);
    ContrastiveResult r = ContrastiveLoss(h, candidates);
    stats.loss = r.loss;
    stats.metric = static_cast<double>(r.correct) / n;
    if (backward) {
      listener.BackwardCandidates(targets, r.d_candidates);
      dh = std::move(r.d_messages);
    }
  } else {
    if (static_cast<int>(batch.candidate_sets.size()) != n) {
      throw std::invalid_argument("ListenerLoss: conventional batch lacks candidate sets");
    }
    const int d = game.candidates;
    std::vector<int> all;
    all.reserve(static_cast<std::size_t>(n) * d);
    for (const auto& set : batch.candidate_sets) all.insert(all.end(), set.begin(), set.end());
    Matrix inputs = space.Gather(all);
    Matrix encoded = listener.EncodeCandidates(inputs);
    Matrix d_encoded = Matrix::Zero(encoded.rows(), encoded.cols());
    dh = Matrix::Zero(h.rows(), n);
    int correct = 0;
    for (int i = 0; i < n; ++i) {
      Matrix block = encoded.middleCols(static_cast<Eigen::Index>(i) * d, d);
      ReferentialResult r =
          ConventionalReferentialLoss(h.col(i), batch.target_positions[i], block);
      stats.loss += r.loss / n;
      correct += ArgmaxLowest(r.probabilities) == batch.target_positions[i];
      dh.col(i) = r.d_message / n;
      d_encoded.middleCols(static_cast<Eigen::Index>(i) * d, d) = r.d_candidates / n;
    }
    stats.metric = static_cast<double>(correct) / n;
    if (backward) listener.BackwardCandidates(inputs, d_encoded);
  }
  if (!std::isfinite(stats.loss)) return stats;
  if (backward) *d_tokens = listener.BackwardEncode(trace, dh);
  return stats;
}

StepStats GameStep(Speaker& speaker, Listener& listener, const GameSpec& game,
                   const InputSpace& space, const EpisodeBatch& batch, Rng& rng,
                   ChannelMode channel, const std::vector<Matrix>* noise) {
  Matrix inputs = space.Gather(batch.targets);
  SpeakerTrace trace = speaker.Forward(inputs, DecodeMode::kTrain, channel, &rng, noise);
  std::vector<Matrix> d_tokens;
  StepStats stats = ListenerLoss(listener, game, space, batch, trace.emitted, &d_tokens);
  if (std::isfinite(stats.loss)) speaker.Backward(trace, d_tokens);
  return stats;
}

}  // namespace emlang
