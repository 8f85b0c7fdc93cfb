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

#ifndef EMLANG_GAMES_H_
#define EMLANG_GAMES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emlang/agents.h"
#include "emlang/meaning_space.h"

namespace emlang {

enum class GameKind { kReconstruction, kReferential };
enum class LossVariant { kContrastive, kConventional };

// Game ids: "recon", "refer<D>" (contrastive, |B| = |D|) and
// "refer<D>-conv" (conventional loss with fresh distractors per item).
struct GameSpec {
  GameKind kind = GameKind::kReferential;
  int candidates = 2;  // |D|, referential only
  LossVariant loss = LossVariant::kContrastive;
  int batch_size = 1024;  // |B| for reconstruction and conventional games

  // Checks the spec against an input space of `space_size` meanings.
  void Validate(int space_size) const;
  // Contrastive games always use |B| = |D|.
  int EffectiveBatchSize() const;
  std::string Id() const;
  ListenerHead Head() const;
  bool IsReferential() const { return kind == GameKind::kReferential; }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

// Throws std::invalid_argument on malformed ids.
GameSpec ParseGameId(std::string_view id, int batch_size);

inline constexpr double kProbabilityClamp = 1e-7;

// Energies h^T f(x_j) for every candidate column of `candidate_embeddings`.
Vector CandidateScores(const Vector& message_embedding,
                       const Matrix& candidate_embeddings);
// Same, encoding flat candidate inputs with the listener's candidate encoder.
Vector CandidateScores(const Listener& listener, const Vector& message_embedding,
                       const Matrix& candidate_inputs);

// Index of the largest entry; ties go to the lowest index.
int ArgmaxLowest(const Vector& values);

struct ContrastiveResult {
  double loss = 0.0;
  Matrix d_messages;    // H x B
  Matrix d_candidates;  // H x B
  int correct = 0;      // items whose argmax score is their own candidate
  Vector item_losses;   // B, per-item -log softmax
};

// Mean over i of -log softmax_j(h_i . f_j)[i]. Only the |B| x |B| score
// matrix is formed.
ContrastiveResult ContrastiveLoss(const Matrix& message_embeddings,
                                  const Matrix& candidate_embeddings);

struct ReferentialResult {
  double loss = 0.0;
  Vector d_message;     // H
  Matrix d_candidates;  // H x D
  Vector probabilities;
};

ReferentialResult ConventionalReferentialLoss(const Vector& message_embedding,
                                              int target_index,
                                              const Matrix& candidate_embeddings);

struct ReconstructionResult {
  double loss = 0.0;
  Matrix d_logits;
};

// Mean binary cross-entropy over digits and columns, computed from logits
// through a sigmoid with probabilities clamped to [eps, 1 - eps]. The
// gradient is zero on clamped entries.
ReconstructionResult ReconstructionLoss(const Matrix& targets, const Matrix& logits);
// Mean binary cross-entropy of one vector given probabilities directly.
double BinaryCrossEntropy(std::span<const double> targets,
                          std::span<const double> probabilities);
// 1 - ReconstructionLoss for a single meaning.
double ReconstructionScore(const Vector& target, const Vector& logits);

double ReferentialAccuracy(const std::vector<Vector>& choice_distributions,
                           const std::vector<int>& target_indices);

// One batch of episodes. For contrastive games the candidate set of every
// item is the batch itself; for conventional games each item carries its own
// candidate list with the target at `target_positions[i]`.
struct EpisodeBatch {
  std::vector<int> targets;
  std::vector<std::vector<int>> candidate_sets;
  std::vector<int> target_positions;
};

// Draws fresh distractors for conventional games: |D| - 1 meanings sampled
// uniformly without replacement from [0, space_size) minus the target, and
// the target inserted at a uniformly random position.
EpisodeBatch MakeEpisodeBatch(const GameSpec& game, std::span<const int> targets,
                              int space_size, Rng& rng);

struct StepStats {
  double loss = 0.0;    // batch mean
  double metric = 0.0;  // accuracy or 1 - BCE, batch mean
  int count = 0;
};

// Listener-side loss for a batch whose messages arrive as per-step token
// matrices. Accumulates listener gradients when `d_tokens` is non-null and
// writes dL/d(tokens) there.
StepStats ListenerLoss(Listener& listener, const GameSpec& game,
                       const InputSpace& space, const EpisodeBatch& batch,
                       const std::vector<Matrix>& tokens,
                       std::vector<Matrix>* d_tokens);

// Full speaker -> channel -> listener forward and backward pass. Gradients
// accumulate into both agents; the caller zeroes and applies them.
StepStats GameStep(Speaker& speaker, Listener& listener, const GameSpec& game,
                   const InputSpace& space, const EpisodeBatch& batch, Rng& rng,
                   ChannelMode channel = ChannelMode::kStraightThrough,
                   const std::vector<Matrix>* noise = nullptr);

}  // namespace emlang

#endif  // EMLANG_GAMES_H_
