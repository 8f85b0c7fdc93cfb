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

#include "emlang/nn.h"

#include <cmath>
#include <stdexcept>

namespace emlang {

namespace {

Matrix Sigmoid(const Matrix& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

}  // namespace

void InitUniformFanIn(Matrix& m, int fan_in, Rng& rng) {
  double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      m(i, j) = (2.0 * UniformOpen01(rng) - 1.0) * bound;
    }
  }
}

Linear::Linear(int in, int out)
    : weight(Matrix::Zero(out, in)),
      bias(Matrix::Zero(out, 1)),
      grad_weight(Matrix::Zero(out, in)),
      grad_bias(Matrix::Zero(out, 1)) {}

void Linear::Init(Rng& rng) {
  InitUniformFanIn(weight, in(), rng);
  bias.setZero();
}

Matrix Linear::Forward(const Matrix& x) const {
  Matrix y = weight * x;
  y.colwise() += bias.col(0);
  return y;
}

Matrix Linear::Backward(const Matrix& x, const Matrix& dy) {
  grad_weight.noalias() += dy * x.transpose();
  grad_bias.col(0) += dy.rowwise().sum();
  return weight.transpose() * dy;
}

void Linear::VisitParams(const std::string& prefix, const ParamVisitor& visit) {
  visit({prefix + ".weight", &weight, &grad_weight});
  visit({prefix + ".bias", &bias, &grad_bias});
}

LstmCell::LstmCell(int input_size, int hidden_size)
    : w_ih(Matrix::Zero(4 * hidden_size, input_size)),
      w_hh(Matrix::Zero(4 * hidden_size, hidden_size)),
      bias(Matrix::Zero(4 * hidden_size, 1)),
      grad_w_ih(Matrix::Zero(4 * hidden_size, input_size)),
      grad_w_hh(Matrix::Zero(4 * hidden_size, hidden_size)),
      grad_bias(Matrix::Zero(4 * hidden_size, 1)) {}

void LstmCell::Init(Rng& rng) {
  InitUniformFanIn(w_ih, input_size(), rng);
  InitUniformFanIn(w_hh, hidden_size(), rng);
  bias.setZero();
}

std::pair<Matrix, Matrix> LstmCell::Forward(const Matrix& x, const Matrix& h_prev,
                                            const Matrix& c_prev,
                                            LstmStepCache* cache) const {
  const Eigen::Index h = hidden_size();
  Matrix gates = w_ih * x;
  gates.noalias() += w_hh * h_prev;
  gates.colwise() += bias.col(0);
  Matrix i = Sigmoid(gates.topRows(h));
  Matrix f = Sigmoid(gates.middleRows(h, h));
  Matrix g = gates.middleRows(2 * h, h).array().tanh().matrix();
  Matrix o = Sigmoid(gates.bottomRows(h));
  Matrix c = (f.array() * c_prev.array() + i.array() * g.array()).matrix();
  Matrix tanh_c = c.array().tanh().matrix();
  Matrix h_next = (o.array() * tanh_c.array()).matrix();
  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->i = std::move(i);
    cache->f = std::move(f);
    cache->g = std::move(g);
    cache->o = std::move(o);
    cache->c = c;
    cache->tanh_c = std::move(tanh_c);
  }
  return {std::move(h_next), std::move(c)};
}

void LstmCell::Backward(const LstmStepCache& cache, const Matrix& dh,
                        const Matrix& dc, Matrix* dx, Matrix* dh_prev,
                        Matrix* dc_prev) {
  const Eigen::Index h = hidden_size();
  auto o = cache.o.array();
  auto tc = cache.tanh_c.array();
  Matrix dc_total =
      (dc.array() + dh.array() * o * (1.0 - tc.square())).matrix();
  Matrix dgates(4 * h, dh.cols());
  auto i = cache.i.array();
  auto f = cache.f.array();
  auto g = cache.g.array();
  dgates.topRows(h) = (dc_total.array() * g * i * (1.0 - i)).matrix();
  dgates.middleRows(h, h) =
      (dc_total.array() * cache.c_prev.array() * f * (1.0 - f)).matrix();
  dgates.middleRows(2 * h, h) = (dc_total.array() * i * (1.0 - g.square())).matrix();
  dgates.bottomRows(h) = (dh.array() * tc * o * (1.0 - o)).matrix();

  grad_w_ih.noalias() += dgates * cache.x.transpose();
  grad_w_hh.noalias() += dgates * cache.h_prev.transpose();
  grad_bias.col(0) += dgates.rowwise().sum();
  if (dx != nullptr) *dx = w_ih.transpose() * dgates;
  if (dh_prev != nullptr) *dh_prev = w_hh.transpose() * dgates;
  if (dc_prev != nullptr) *dc_prev = (dc_total.array() * f).matrix();
}

void LstmCell::VisitParams(const std::string& prefix, const ParamVisitor& visit) {
  visit({prefix + ".w_ih", &w_ih, &grad_w_ih});
  visit({prefix + ".w_hh", &w_hh, &grad_w_hh});
  visit({prefix + ".bias", &bias, &grad_bias});
}

void AdamConfig::Validate() const {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("Adam: learning_rate must be positive");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("Adam: betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("Adam: epsilon must be positive");
}

void Adam::Step(const std::function<void(const ParamVisitor&)>& for_each_param) {
  ++step_;
  const double bc1 = 1.0 - std::pow(config_.beta1, step_);
  const double bc2 = 1.0 - std::pow(config_.beta2, step_);
  std::size_t k = 0;
  for_each_param([&](const ParamRef& p) {
    if (k == m_.size()) {
      m_.push_back(Matrix::Zero(p.value->rows(), p.value->cols()));
      v_.push_back(Matrix::Zero(p.value->rows(), p.value->cols()));
    }
    Matrix& m = m_[k];
    Matrix& v = v_[k];
    const Matrix& g = *p.grad;
    m = config_.beta1 * m + (1.0 - config_.beta1) * g;
    v = config_.beta2 * v + (1.0 - config_.beta2) * g.cwiseProduct(g);
    p.value->array() -= config_.learning_rate * (m.array() / bc1) /
                        ((v.array() / bc2).sqrt() + config_.epsilon);
    ++k;
  });
}

void ZeroGrads(const std::function<void(const ParamVisitor&)>& for_each_param) {
  for_each_param([](const ParamRef& p) { p.grad->setZero(); });
}

Matrix SoftmaxColumns(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    double mx = logits.col(j).maxCoeff();
    out.col(j) = (logits.col(j).array() - mx).exp().matrix();
    out.col(j) /= out.col(j).sum();
  }
  return out;
}

Vector Softmax(const Vector& logits) {
  Matrix p = SoftmaxColumns(logits);
  return p.col(0);
}

Matrix SoftmaxBackward(const Matrix& p, const Matrix& dp) {
  Matrix out(p.rows(), p.cols());
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    double dot = p.col(j).dot(dp.col(j));
    out.col(j) = (p.col(j).array() * (dp.col(j).array() - dot)).matrix();
  }
  return out;
}

}  // namespace emlang
