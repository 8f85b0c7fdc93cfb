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

#ifndef EMLANG_NN_H_
#define EMLANG_NN_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "emlang/random.h"

namespace emlang {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A named tensor together with its gradient accumulator. Modules expose
// their parameters through this view so that optimizers, checkpoints and
// finite-difference checks share one enumeration order.
struct ParamRef {
  std::string name;
  Matrix* value;
  Matrix* grad;
};

using ParamVisitor = std::function<void(const ParamRef&)>;

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
void InitUniformFanIn(Matrix& m, int fan_in, Rng& rng);

// Affine map y = W x + b applied column-wise.
struct Linear {
  Matrix weight;  // out x in
  Matrix bias;    // out x 1
  Matrix grad_weight;
  Matrix grad_bias;

  Linear() = default;
  Linear(int in, int out);

  int in() const { return static_cast<int>(weight.cols()); }
  int out() const { return static_cast<int>(weight.rows()); }

  void Init(Rng& rng);
  Matrix Forward(const Matrix& x) const;
  // Accumulates parameter gradients and returns dL/dx.
  Matrix Backward(const Matrix& x, const Matrix& dy);
  void VisitParams(const std::string& prefix, const ParamVisitor& visit);
};

struct LstmStepCache {
  Matrix x, h_prev, c_prev;
  Matrix i, f, g, o, c, tanh_c;
};

// Standard LSTM cell, gate order (input, forget, cell, output), single bias.
struct LstmCell {
  Matrix w_ih;  // 4H x input
  Matrix w_hh;  // 4H x H
  Matrix bias;  // 4H x 1
  Matrix grad_w_ih, grad_w_hh, grad_bias;

  LstmCell() = default;
  LstmCell(int input_size, int hidden_size);

  int hidden_size() const { return static_cast<int>(w_hh.cols()); }
  int input_size() const { return static_cast<int>(w_ih.cols()); }

  void Init(Rng& rng);
  // Returns (h, c). Fills `cache` when non-null.
  std::pair<Matrix, Matrix> Forward(const Matrix& x, const Matrix& h_prev,
                                    const Matrix& c_prev,
                                    LstmStepCache* cache) const;
  // Given dL/dh and dL/dc at this step's outputs, accumulates parameter
  // gradients and writes dL/dx, dL/dh_prev, dL/dc_prev.
  void Backward(const LstmStepCache& cache, const Matrix& dh, const Matrix& dc,
                Matrix* dx, Matrix* dh_prev, Matrix* dc_prev);
  void VisitParams(const std::string& prefix, const ParamVisitor& visit);
};

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

class Adam {
 public:
  explicit Adam(AdamConfig config) : config_(config) { config_.Validate(); }

  // Applies one update to every parameter the visitor enumerates. The
  // enumeration order must be the same on every call.
  void Step(const std::function<void(const ParamVisitor&)>& for_each_param);
  int steps() const { return step_; }

 private:
  AdamConfig config_;
  int step_ = 0;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

void ZeroGrads(const std::function<void(const ParamVisitor&)>& for_each_param);

// Column-wise softmax.
Matrix SoftmaxColumns(const Matrix& logits);
Vector Softmax(const Vector& logits);

// Backprop through a column-wise softmax: given p = softmax(z) and dL/dp,
// returns dL/dz.
Matrix SoftmaxBackward(const Matrix& p, const Matrix& dp);

}  // namespace emlang

#endif  // EMLANG_NN_H_
