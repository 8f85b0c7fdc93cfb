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

#ifndef EMLANG_AGENTS_H_
#define EMLANG_AGENTS_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "emlang/meaning_space.h"
#include "emlang/nn.h"
#include "emlang/random.h"

namespace emlang {

struct ChannelSpec {
  int message_length = 6;
  int vocab_size = 10;
  double temperature = 1.0;

  void Validate() const;
  // vocab_size ^ message_length as a double (may exceed 2^64 for presets).
  double MessageSpaceSize() const;

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

// A fixed-length token sequence. A distinct value is a "message type".
struct Message {
  std::vector<int> tokens;

  auto operator<=>(const Message&) const = default;
  bool operator==(const Message&) const = default;
};

struct MessageHash {
  std::size_t operator()(const Message& m) const noexcept;
};

std::string ToString(const Message& message);

struct GumbelSample {
  Vector hard;     // one-hot
  Vector relaxed;  // softmax((logits + noise) / tau)
  int index = 0;
};

// Straight-through Gumbel-Softmax for a single logit vector.
GumbelSample GumbelSoftmaxSample(const Vector& logits, double tau, Rng& rng);

// Batched form with caller-provided Gumbel noise (same shape as logits).
// Writes the relaxed distribution and the argmax index per column.
void GumbelSoftmaxColumns(const Matrix& logits, const Matrix& noise, double tau,
                          Matrix* relaxed, std::vector<int>* argmax);

Matrix OneHotColumns(const std::vector<int>& indices, int rows);

enum class DecodeMode { kTrain, kGreedy };

// kStraightThrough passes one-hot tokens forward and takes gradients through
// the relaxed sample. kRelaxed passes the relaxed sample itself; it exists to
// check the straight-through gradient path against a smooth forward pass.
enum class ChannelMode { kStraightThrough, kRelaxed };

struct AgentShape {
  int input_size = 40;
  int hidden_size = 256;
  int embed_size = 256;

  void Validate() const;
};

// Everything the speaker's backward pass needs from one batched forward.
struct SpeakerTrace {
  Matrix inputs;                         // D x B
  Matrix hidden_init;                    // H x B, tanh(perception)
  std::vector<LstmStepCache> cells;      // per step
  std::vector<Matrix> step_inputs_value; // E x B, embedding fed at each step
  std::vector<Matrix> relaxed;           // V x B per step (train mode)
  std::vector<Matrix> emitted;           // V x B per step, values passed on
  std::vector<Matrix> logits;            // V x B per step
  std::vector<std::vector<int>> tokens;  // per step, per column
  ChannelMode channel_mode = ChannelMode::kStraightThrough;
  DecodeMode decode_mode = DecodeMode::kGreedy;
  double temperature = 1.0;

  std::vector<Message> Messages() const;
};

// Perception MLP (one tanh layer) feeding an LSTM decoder. The perception
// output initializes the decoder hidden state; the cell state starts at zero;
// step 0 consumes a learned start embedding and later steps consume the
// embedding of the previously emitted token.
class Speaker {
 public:
  Speaker() = default;
  Speaker(const AgentShape& shape, const ChannelSpec& channel);

  void Init(Rng& rng);

  // inputs: D x B flat meanings. In kTrain mode `noise` supplies one V x B
  // Gumbel matrix per step; pass nullptr to draw fresh noise from `rng`.
  SpeakerTrace Forward(const Matrix& inputs, DecodeMode mode, ChannelMode channel,
                       Rng* rng, const std::vector<Matrix>* noise = nullptr) const;

  // d_emitted[t] is dL/d(emitted token vector at step t), V x B.
  void Backward(const SpeakerTrace& trace, const std::vector<Matrix>& d_emitted);

  // Greedy messages for a batch of flat meanings.
  std::vector<Message> Greedy(const Matrix& inputs) const;

  void VisitParams(const ParamVisitor& visit);
  void ZeroGrad();

  const AgentShape& shape() const { return shape_; }
  const ChannelSpec& channel() const { return channel_; }

 private:
  AgentShape shape_;
  ChannelSpec channel_;
  Linear perception_;
  LstmCell decoder_;
  Matrix embedding_;  // E x V
  Matrix start_;      // E x 1
  Linear head_;       // H -> V
  Matrix grad_embedding_;
  Matrix grad_start_;
};

// Result of speaker_forward for a single meaning.
struct SpeakerSample {
  Message message;
  std::vector<Vector> distributions;  // per step, V entries
};

SpeakerSample SpeakerForward(const Speaker& speaker, const MeaningVector& x,
                             DecodeMode mode, Rng& rng);

enum class ListenerHead { kReferential, kReconstruction };

struct EncoderTrace {
  std::vector<Matrix> tokens;  // V x B per step, as received
  std::vector<LstmStepCache> cells;
};

// LSTM message encoder with a game-specific action head: a candidate encoder
// f (flat meaning -> H) for referential games or a generator g (H -> flat
// logits) for reconstruction.
class Listener {
 public:
  Listener() = default;
  Listener(const AgentShape& shape, const ChannelSpec& channel, ListenerHead head);

  void Init(Rng& rng);

  // tokens: one V x B matrix per step (one-hot or relaxed distributions).
  Matrix Encode(const std::vector<Matrix>& tokens, EncoderTrace* trace) const;
  Matrix EncodeMessages(const std::vector<Message>& messages) const;
  // Returns dL/d(tokens) per step.
  std::vector<Matrix> BackwardEncode(const EncoderTrace& trace, const Matrix& dh);

  // Candidate encoder f. Counts every encoded column.
  Matrix EncodeCandidates(const Matrix& inputs) const;
  void BackwardCandidates(const Matrix& inputs, const Matrix& d_embeddings);

  // Generator g: reconstruction logits.
  Matrix Reconstruct(const Matrix& h) const;
  Matrix BackwardReconstruct(const Matrix& h, const Matrix& d_logits);

  void VisitParams(const ParamVisitor& visit);
  void ZeroGrad();

  ListenerHead head() const { return head_; }
  const AgentShape& shape() const { return shape_; }
  const ChannelSpec& channel() const { return channel_; }

  std::uint64_t candidate_encodings() const { return candidate_encodings_; }
  void reset_candidate_encodings() { candidate_encodings_ = 0; }

 private:
  AgentShape shape_;
  ChannelSpec channel_;
  ListenerHead head_ = ListenerHead::kReferential;
  Matrix embedding_;  // E x V
  Matrix grad_embedding_;
  LstmCell encoder_;
  Linear candidate_encoder_;
  Linear generator_;
  mutable std::uint64_t candidate_encodings_ = 0;
};

std::vector<Matrix> MessagesToOneHot(const std::vector<Message>& messages,
                                     const ChannelSpec& channel);

// h^L for a single message.
Vector ListenerEncodeMessage(const Listener& listener, const Message& message);
// h^L for relaxed per-step token distributions of a single message.
Vector ListenerEncodeDistributions(const Listener& listener,
                                   const std::vector<Vector>& distributions);

}  // namespace emlang

#endif  // EMLANG_AGENTS_H_
