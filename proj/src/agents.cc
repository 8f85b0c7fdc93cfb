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

#include "emlang/agents.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace emlang {

void ChannelSpec::Validate() const {
  if (message_length < 1) {
    throw std::invalid_argument("ChannelSpec: message_length must be >= 1");
  }
  if (vocab_size < 1) throw std::invalid_argument("ChannelSpec: vocab_size must be >= 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("ChannelSpec: temperature must be positive");
  }
}

double ChannelSpec::MessageSpaceSize() const {
  return std::pow(static_cast<double>(vocab_size), message_length);
}

std::size_t MessageHash::operator()(const Message& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int t : m.tokens) {
    h ^= static_cast<std::size_t>(t) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string ToString(const Message& message) {
  std::ostringstream out;
  for (std::size_t i = 0; i < message.tokens.size(); ++i) {
    if (i) out << ' ';
    out << message.tokens[i];
  }
  return out.str();
}

GumbelSample GumbelSoftmaxSample(const Vector& logits, double tau, Rng& rng) {
  if (!(tau > 0.0)) throw std::invalid_argument("Gumbel-Softmax: tau must be positive");
  if (!logits.allFinite()) {
    throw std::invalid_argument("Gumbel-Softmax: logits must be finite");
  }
  Matrix noise(logits.size(), 1);
  for (Eigen::Index i = 0; i < logits.size(); ++i) noise(i, 0) = SampleGumbel(rng);
  Matrix relaxed;
  std::vector<int> argmax;
  GumbelSoftmaxColumns(logits, noise, tau, &relaxed, &argmax);
  GumbelSample sample;
  sample.relaxed = relaxed.col(0);
  sample.index = argmax[0];
  sample.hard = Vector::Zero(logits.size());
  sample.hard(sample.index) = 1.0;
  return sample;
}

void GumbelSoftmaxColumns(const Matrix& logits, const Matrix& noise, double tau,
                          Matrix* relaxed, std::vector<int>* argmax) {
  if (!logits.allFinite()) {
    throw std::invalid_argument("Gumbel-Softmax: logits must be finite");
  }
  Matrix perturbed = (logits + noise) / tau;
  *relaxed = SoftmaxColumns(perturbed);
  argmax->resize(perturbed.cols());
  for (Eigen::Index j = 0; j < perturbed.cols(); ++j) {
    Eigen::Index best;
    perturbed.col(j).maxCoeff(&best);
    (*argmax)[j] = static_cast<int>(best);
  }
}

Matrix OneHotColumns(const std::vector<int>& indices, int rows) {
  Matrix out = Matrix::Zero(rows, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    out(indices[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return out;
}

void AgentShape::Validate() const {
  if (input_size < 1 || hidden_size < 1 || embed_size < 1) {
    throw std::invalid_argument("AgentShape: sizes must be positive");
  }
}

std::vector<Message> SpeakerTrace::Messages() const {
  std::vector<Message> out;
  if (tokens.empty()) return out;
  out.resize(tokens[0].size());
  for (auto& m : out) m.tokens.reserve(tokens.size());
  for (const auto& step : tokens) {
    for (std::size_t b = 0; b < step.size(); ++b) out[b].tokens.push_back(step[b]);
  }
  return out;
}

Speaker::Speaker(const AgentShape& shape, const ChannelSpec& channel)
    : shape_(shape),
      channel_(channel),
      perception_(shape.input_size, shape.hidden_size),
      decoder_(shape.embed_size, shape.hidden_size),
      embedding_(Matrix::Zero(shape.embed_size, channel.vocab_size)),
      start_(Matrix::Zero(shape.embed_size, 1)),
      head_(shape.hidden_size, channel.vocab_size),
      grad_embedding_(Matrix::Zero(shape.embed_size, channel.vocab_size)),
      grad_start_(Matrix::Zero(shape.embed_size, 1)) {
  shape.Validate();
  channel.Validate();
}

void Speaker::Init(Rng& rng) {
  perception_.Init(rng);
  decoder_.Init(rng);
  InitUniformFanIn(embedding_, channel_.vocab_size, rng);
  InitUniformFanIn(start_, channel_.vocab_size, rng);
  head_.Init(rng);
}

SpeakerTrace Speaker::Forward(const Matrix& inputs, DecodeMode mode,
                              ChannelMode channel, Rng* rng,
                              const std::vector<Matrix>* noise) const {
  if (inputs.rows() != shape_.input_size) {
    throw std::invalid_argument("Speaker: input has " +
                                std::to_string(inputs.rows()) + " rows, expected " +
                                std::to_string(shape_.input_size));
  }
  const Eigen::Index batch = inputs.cols();
  const int length = channel_.message_length;
  const int vocab = channel_.vocab_size;
  if (mode == DecodeMode::kTrain && noise == nullptr && rng == nullptr) {
    throw std::invalid_argument("Speaker: train mode needs an rng or fixed noise");
  }
  if (noise != nullptr && static_cast<int>(noise->size()) != length) {
    throw std::invalid_argument("Speaker: noise must have one matrix per step");
  }

  SpeakerTrace trace;
  trace.decode_mode = mode;
  trace.channel_mode = channel;
  trace.temperature = channel_.temperature;
  trace.inputs = inputs;
  trace.hidden_init = perception_.Forward(inputs).array().tanh().matrix();
  trace.cells.resize(length);
  trace.step_inputs_value.resize(length);
  trace.emitted.resize(length);
  trace.logits.resize(length);
  trace.tokens.resize(length);
  if (mode == DecodeMode::kTrain) trace.relaxed.resize(length);

  Matrix h = trace.hidden_init;
  Matrix c = Matrix::Zero(shape_.hidden_size, batch);
  Matrix step_input = start_.replicate(1, batch);
  for (int t = 0; t < length; ++t) {
    trace.step_inputs_value[t] = step_input;
    auto [h_next, c_next] = decoder_.Forward(step_input, h, c, &trace.cells[t]);
    h = std::move(h_next);
    c = std::move(c_next);
    Matrix logits = head_.Forward(h);
    if (mode == DecodeMode::kTrain) {
      Matrix step_noise;
      if (noise != nullptr) {
        step_noise = (*noise)[t];
      } else {
        step_noise.resize(vocab, batch);
        for (Eigen::Index j = 0; j < batch; ++j) {
          for (int v = 0; v < vocab; ++v) step_noise(v, j) = SampleGumbel(*rng);
        }
      }
      GumbelSoftmaxColumns(logits, step_noise, channel_.temperature,
                           &trace.relaxed[t], &trace.tokens[t]);
      trace.emitted[t] = channel == ChannelMode::kStraightThrough
                             ? OneHotColumns(trace.tokens[t], vocab)
                             : trace.relaxed[t];
    } else {
      trace.tokens[t].resize(batch);
      for (Eigen::Index j = 0; j < batch; ++j) {
        Eigen::Index best;
        logits.col(j).maxCoeff(&best);
        trace.tokens[t][j] = static_cast<int>(best);
      }
      trace.emitted[t] = OneHotColumns(trace.tokens[t], vocab);
    }
    trace.logits[t] = std::move(logits);
    step_input = embedding_ * trace.emitted[t];
  }
  return trace;
}

void Speaker::Backward(const SpeakerTrace& trace,
                       const std::vector<Matrix>& d_emitted) {
  if (trace.decode_mode != DecodeMode::kTrain) {
    throw std::logic_error("Speaker: greedy decoding is not differentiable");
  }
  const int length = channel_.message_length;
  const Eigen::Index batch = trace.inputs.cols();
  Matrix dh_next = Matrix::Zero(shape_.hidden_size, batch);
  Matrix dc_next = Matrix::Zero(shape_.hidden_size, batch);
  Matrix d_from_next = Matrix::Zero(channel_.vocab_size, batch);
  for (int t = length - 1; t >= 0; --t) {
    Matrix d_token = d_emitted[t] + d_from_next;
    // Straight-through: the gradient w.r.t. the emitted value is routed to
    // the relaxed sample in both channel modes.
    Matrix d_logits = SoftmaxBackward(trace.relaxed[t], d_token) / trace.temperature;
    const LstmStepCache& cache = trace.cells[t];
    Matrix h_t = (cache.o.array() * cache.tanh_c.array()).matrix();
    Matrix dh = head_.Backward(h_t, d_logits) + dh_next;
    Matrix dx, dh_prev, dc_prev;
    decoder_.Backward(cache, dh, dc_next, &dx, &dh_prev, &dc_prev);
    if (t > 0) {
      grad_embedding_.noalias() += dx * trace.emitted[t - 1].transpose();
      d_from_next = embedding_.transpose() * dx;
    } else {
      grad_start_.col(0) += dx.rowwise().sum();
    }
    dh_next = std::move(dh_prev);
    dc_next = std::move(dc_prev);
  }
  Matrix d_pre =
      (dh_next.array() * (1.0 - trace.hidden_init.array().square())).matrix();
  perception_.Backward(trace.inputs, d_pre);
}

std::vector<Message> Speaker::Greedy(const Matrix& inputs) const {
  return Forward(inputs, DecodeMode::kGreedy, ChannelMode::kStraightThrough, nullptr)
      .Messages();
}

void Speaker::VisitParams(const ParamVisitor& visit) {
  perception_.VisitParams("speaker.perception", visit);
  decoder_.VisitParams("speaker.decoder", visit);
  visit({"speaker.embedding", &embedding_, &grad_embedding_});
  visit({"speaker.start", &start_, &grad_start_});
  head_.VisitParams("speaker.head", visit);
}

void Speaker::ZeroGrad() {
  VisitParams([](const ParamRef& p) { p.grad->setZero(); });
}

SpeakerSample SpeakerForward(const Speaker& speaker, const MeaningVector& x,
                             DecodeMode mode, Rng& rng) {
  auto flat = x.Flat();
  Matrix input(flat.size(), 1);
  for (std::size_t i = 0; i < flat.size(); ++i) input(i, 0) = flat[i];
  SpeakerTrace trace =
      speaker.Forward(input, mode, ChannelMode::kStraightThrough, &rng);
  SpeakerSample sample;
  sample.message = trace.Messages()[0];
  for (int t = 0; t < speaker.channel().message_length; ++t) {
    if (mode == DecodeMode::kTrain) {
      sample.distributions.push_back(trace.relaxed[t].col(0));
    } else {
      sample.distributions.push_back(Softmax(trace.logits[t].col(0)));
    }
  }
  return sample;
}

Listener::Listener(const AgentShape& shape, const ChannelSpec& channel,
                   ListenerHead head)
    : shape_(shape),
      channel_(channel),
      head_(head),
      embedding_(Matrix::Zero(shape.embed_size, channel.vocab_size)),
      grad_embedding_(Matrix::Zero(shape.embed_size, channel.vocab_size)),
      encoder_(shape.embed_size, shape.hidden_size) {
  shape.Validate();
  channel.Validate();
  if (head == ListenerHead::kReferential) {
    candidate_encoder_ = Linear(shape.input_size, shape.hidden_size);
  } else {
    generator_ = Linear(shape.hidden_size, shape.input_size);
  }
}

void Listener::Init(Rng& rng) {
  InitUniformFanIn(embedding_, channel_.vocab_size, rng);
  encoder_.Init(rng);
  if (head_ == ListenerHead::kReferential) {
    candidate_encoder_.Init(rng);
  } else {
    generator_.Init(rng);
  }
}

Matrix Listener::Encode(const std::vector<Matrix>& tokens, EncoderTrace* trace) const {
  if (static_cast<int>(tokens.size()) != channel_.message_length) {
    throw std::invalid_argument("Listener: message has " +
                                std::to_string(tokens.size()) +
                                " steps, expected " +
                                std::to_string(channel_.message_length));
  }
  const Eigen::Index batch = tokens[0].cols();
  Matrix h = Matrix::Zero(shape_.hidden_size, batch);
  Matrix c = Matrix::Zero(shape_.hidden_size, batch);
  if (trace != nullptr) {
    trace->tokens = tokens;
    trace->cells.assign(tokens.size(), LstmStepCache{});
  }
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t].rows() != channel_.vocab_size || tokens[t].cols() != batch) {
      throw std::invalid_argument("Listener: token matrix has wrong shape");
    }
    Matrix x = embedding_ * tokens[t];
    auto [h_next, c_next] =
        encoder_.Forward(x, h, c, trace != nullptr ? &trace->cells[t] : nullptr);
    h = std::move(h_next);
    c = std::move(c_next);
  }
  return h;
}

Matrix Listener::EncodeMessages(const std::vector<Message>& messages) const {
  return Encode(MessagesToOneHot(messages, channel_), nullptr);
}

std::vector<Matrix> Listener::BackwardEncode(const EncoderTrace& trace,
                                             const Matrix& dh) {
  const std::size_t length = trace.tokens.size();
  std::vector<Matrix> d_tokens(length);
  Matrix dh_next = dh;
  Matrix dc_next = Matrix::Zero(dh.rows(), dh.cols());
  for (std::size_t k = length; k-- > 0;) {
    Matrix dx, dh_prev, dc_prev;
    encoder_.Backward(trace.cells[k], dh_next, dc_next, &dx, &dh_prev, &dc_prev);
    grad_embedding_.noalias() += dx * trace.tokens[k].transpose();
    d_tokens[k] = embedding_.transpose() * dx;
    dh_next = std::move(dh_prev);
    dc_next = std::move(dc_prev);
  }
  return d_tokens;
}

Matrix Listener::EncodeCandidates(const Matrix& inputs) const {
  if (head_ != ListenerHead::kReferential) {
    throw std::logic_error("Listener: candidate encoder needs a referential head");
  }
  candidate_encodings_ += static_cast<std::uint64_t>(inputs.cols());
  return candidate_encoder_.Forward(inputs);
}

void Listener::BackwardCandidates(const Matrix& inputs, const Matrix& d_embeddings) {
  candidate_encoder_.Backward(inputs, d_embeddings);
}

Matrix Listener::Reconstruct(const Matrix& h) const {
  if (head_ != ListenerHead::kReconstruction) {
    throw std::logic_error("Listener: generator needs a reconstruction head");
  }
  return generator_.Forward(h);
}

Matrix Listener::BackwardReconstruct(const Matrix& h, const Matrix& d_logits) {
  return generator_.Backward(h, d_logits);
}

void Listener::VisitParams(const ParamVisitor& visit) {
  visit({"listener.embedding", &embedding_, &grad_embedding_});
  encoder_.VisitParams("listener.encoder", visit);
  if (head_ == ListenerHead::kReferential) {
    candidate_encoder_.VisitParams("listener.candidate_encoder", visit);
  } else {
    generator_.VisitParams("listener.generator", visit);
  }
}

void Listener::ZeroGrad() {
  VisitParams([](const ParamRef& p) { p.grad->setZero(); });
}

std::vector<Matrix> MessagesToOneHot(const std::vector<Message>& messages,
                                     const ChannelSpec& channel) {
  std::vector<Matrix> out(channel.message_length,
                          Matrix::Zero(channel.vocab_size,
                                       static_cast<Eigen::Index>(messages.size())));
  for (std::size_t b = 0; b < messages.size(); ++b) {
    const auto& tokens = messages[b].tokens;
    if (static_cast<int>(tokens.size()) != channel.message_length) {
      throw std::invalid_argument("message length " + std::to_string(tokens.size()) +
                                  " does not match channel length " +
                                  std::to_string(channel.message_length));
    }
    for (int t = 0; t < channel.message_length; ++t) {
      if (tokens[t] < 0 || tokens[t] >= channel.vocab_size) {
        throw std::invalid_argument("message token out of vocabulary");
      }
      out[t](tokens[t], static_cast<Eigen::Index>(b)) = 1.0;
    }
  }
  return out;
}

Vector ListenerEncodeMessage(const Listener& listener, const Message& message) {
  return listener.EncodeMessages({message}).col(0);
}

Vector ListenerEncodeDistributions(const Listener& listener,
                                   const std::vector<Vector>& distributions) {
  std::vector<Matrix> tokens;
  tokens.reserve(distributions.size());
  for (const Vector& d : distributions) tokens.emplace_back(d);
  return listener.Encode(tokens, nullptr).col(0);
}

}  // namespace emlang
