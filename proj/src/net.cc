// Copyright 2026 The FSC Hanabi Benchmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fsc/net.h"

#include <cmath>
#include <limits>

#include "fsc/rng.h"

namespace fsc {

std::string ArchitectureDescriptor::Name() const {
  return cell + "-h" + std::to_string(hidden_dim) + "-l" +
         std::to_string(num_hidden_layers) + "-w" +
         std::to_string(history_len) + (dueling ? "-dueling" : "");
}

std::vector<ArchitectureDescriptor> EnumerateArchitectures() {
  std::vector<ArchitectureDescriptor> out;
  for (int hidden : {64, 128}) {
    for (int layers : {1, 2}) {
      for (int window : {1, 2}) {
        for (bool dueling : {false, true}) {
          out.push_back({window, layers, hidden, dueling, "feedforward"});
        }
      }
    }
  }
  return out;
}

QNetwork::QNetwork(const ArchitectureDescriptor& arch,
                   const GameConfig& config, uint64_t init_seed)
    : arch_(arch), config_(config) {
  config.Validate();
  if (arch.cell != "feedforward") {
    throw ConfigError("unsupported cell type: " + arch.cell);
  }
  if (arch.history_len < 1 || arch.num_hidden_layers < 1 ||
      arch.hidden_dim < 1) {
    throw ConfigError("invalid architecture descriptor");
  }
  input_size_ = History::EncodedSize(arch.history_len, config);
  num_actions_ = config.ActionSpaceSize();

  int offset = 0;
  auto add_layer = [&](int in, int out) {
    Layer l{in, out, offset, offset + in * out};
    offset += in * out + out;
    return l;
  };
  int in = input_size_;
  for (int i = 0; i < arch.num_hidden_layers; ++i) {
    hidden_.push_back(add_layer(in, arch.hidden_dim));
    in = arch.hidden_dim;
  }
  if (arch.dueling) value_head_ = add_layer(in, 1);
  advantage_head_ = add_layer(in, num_actions_);
  params_.resize(offset);

  // Xavier-uniform weights, zero biases.
  Rng rng(init_seed);
  auto init = [&](const Layer& l) {
    double lim = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    for (int i = 0; i < l.in * l.out; ++i) {
      params_[l.w_off + i] =
          static_cast<float>((rng.Uniform() * 2.0 - 1.0) * lim);
    }
  };
  for (const Layer& l : hidden_) init(l);
  if (arch.dueling) init(value_head_);
  init(advantage_head_);
}

void QNetwork::SetParams(std::span<const float> p) {
  if (static_cast<int>(p.size()) != num_params()) {
    throw UsageError("parameter vector has wrong length");
  }
  params_.assign(p.begin(), p.end());
}

namespace {

void Affine(const std::vector<float>& params, int w_off, int b_off, int in,
            int out, const double* x, double* y) {
  for (int o = 0; o < out; ++o) {
    double acc = params[b_off + o];
    const float* w = params.data() + w_off + o * in;
    for (int i = 0; i < in; ++i) acc += static_cast<double>(w[i]) * x[i];
    y[o] = acc;
  }
}

}  // namespace

std::vector<double> QNetwork::Forward(std::span<const float> input) const {
  Cache cache;
  return Forward(input, &cache);
}

std::vector<double> QNetwork::Forward(std::span<const float> input,
                                      Cache* cache) const {
  if (static_cast<int>(input.size()) != input_size_) {
    throw UsageError("input has wrong size");
  }
  cache->input.assign(input.begin(), input.end());
  cache->pre.resize(hidden_.size());
  cache->post.resize(hidden_.size());

  std::vector<double> x(input.begin(), input.end());
  for (size_t i = 0; i < hidden_.size(); ++i) {
    const Layer& l = hidden_[i];
    cache->pre[i].resize(l.out);
    Affine(params_, l.w_off, l.b_off, l.in, l.out, x.data(),
           cache->pre[i].data());
    cache->post[i] = cache->pre[i];
    for (double& v : cache->post[i]) v = v > 0.0 ? v : 0.0;
    x = cache->post[i];
  }

  std::vector<double> q(num_actions_);
  Affine(params_, advantage_head_.w_off, advantage_head_.b_off,
         advantage_head_.in, advantage_head_.out, x.data(), q.data());
  if (arch_.dueling) {
    double v;
    Affine(params_, value_head_.w_off, value_head_.b_off, value_head_.in, 1,
           x.data(), &v);
    double mean_adv = 0.0;
    for (double a : q) mean_adv += a;
    mean_adv /= static_cast<double>(num_actions_);
    for (double& a : q) a = v + a - mean_adv;
  }
  return q;
}

void QNetwork::Backward(const Cache& cache, std::span<const double> dq,
                        std::vector<double>* grad) const {
  if (static_cast<int>(dq.size()) != num_actions_) {
    throw UsageError("dq has wrong size");
  }
  if (static_cast<int>(grad->size()) != num_params()) {
    throw UsageError("grad has wrong size");
  }
  const double* feat = cache.post.back().data();
  int feat_dim = advantage_head_.in;

  // d(head outputs): with dueling, Q_a = V + A_a - mean(A).
  std::vector<double> d_adv(num_actions_);
  double d_value = 0.0;
  if (arch_.dueling) {
    double dq_sum = 0.0;
    for (double d : dq) dq_sum += d;
    d_value = dq_sum;
    for (int a = 0; a < num_actions_; ++a) {
      d_adv[a] = dq[a] - dq_sum / static_cast<double>(num_actions_);
    }
  } else {
    d_adv.assign(dq.begin(), dq.end());
  }

  std::vector<double> d_feat(feat_dim, 0.0);
  auto back_affine = [&](const Layer& l, const double* x,
                         std::span<const double> dy, std::vector<double>* dx) {
    for (int o = 0; o < l.out; ++o) {
      double d = dy[o];
      if (d == 0.0) continue;
      (*grad)[l.b_off + o] += d;
      double* gw = grad->data() + l.w_off + o * l.in;
      const float* w = params_.data() + l.w_off + o * l.in;
      for (int i = 0; i < l.in; ++i) {
        gw[i] += d * x[i];
        if (dx) (*dx)[i] += d * static_cast<double>(w[i]);
      }
    }
  };

  back_affine(advantage_head_, feat, d_adv, &d_feat);
  if (arch_.dueling) {
    back_affine(value_head_, feat, std::span<const double>(&d_value, 1),
                &d_feat);
  }

  // Hidden stack, last to first.
  std::vector<double> dy = std::move(d_feat);
  for (int i = static_cast<int>(hidden_.size()) - 1; i >= 0; --i) {
    const Layer& l = hidden_[i];
    for (int o = 0; o < l.out; ++o) {
      if (cache.pre[i][o] <= 0.0) dy[o] = 0.0;  // ReLU gate
    }
    std::vector<double> dx;
    const double* x;
    std::vector<double> input_as_double;
    if (i > 0) {
      x = cache.post[i - 1].data();
      dx.assign(l.in, 0.0);
      back_affine(l, x, dy, &dx);
      dy = std::move(dx);
    } else {
      input_as_double.assign(cache.input.begin(), cache.input.end());
      back_affine(l, input_as_double.data(), dy, nullptr);
    }
  }
}

int QNetwork::MaskedArgmax(std::span<const double> q,
                           std::span<const uint8_t> legal_mask) const {
  int best = -1;
  double best_q = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_actions_; ++a) {
    if (!legal_mask[a]) continue;
    if (q[a] > best_q) {
      best_q = q[a];
      best = a;
    }
  }
  if (best < 0) throw UsageError("no legal action in mask");
  return best;
}

AdamOptimizer::AdamOptimizer(int num_params, double lr)
    : lr_(lr), m_(num_params, 0.0), v_(num_params, 0.0) {}

void AdamOptimizer::Step(std::span<const double> grad,
                         std::vector<float>* params) {
  if (grad.size() != m_.size() || params->size() != m_.size()) {
    throw UsageError("gradient/parameter size mismatch");
  }
  t_ += 1;
  double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (size_t i = 0; i < m_.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    double update = lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
    (*params)[i] = static_cast<float>(static_cast<double>((*params)[i]) -
                                      update);
  }
}

}  // namespace fsc
