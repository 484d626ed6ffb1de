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

#ifndef FSC_NET_H_
#define FSC_NET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsc/engine.h"

namespace fsc {

struct ArchitectureDescriptor {
  int history_len = 1;
  int num_hidden_layers = 1;
  int hidden_dim = 64;
  bool dueling = false;
  std::string cell = "feedforward";

  std::string Name() const;
  bool operator==(const ArchitectureDescriptor&) const = default;
};

// Desk-scale grid of the pool's agent variants: hidden_dim {64,128} x
// layers {1,2} x history_len {1,2} x dueling {off,on} = 16 descriptors.
std::vector<ArchitectureDescriptor> EnumerateArchitectures();

// Feedforward Q network over a flattened history window. Parameters are a
// flat f32 vector; all arithmetic accumulates in double so that analytic
// gradients agree with finite differences to high precision.
//
// Head: plain linear, or dueling V + A - mean(A).
class QNetwork {
 public:
  QNetwork(const ArchitectureDescriptor& arch, const GameConfig& config,
           uint64_t init_seed);

  const ArchitectureDescriptor& arch() const { return arch_; }
  const GameConfig& config() const { return config_; }
  int input_size() const { return input_size_; }
  int num_actions() const { return num_actions_; }
  int num_params() const { return static_cast<int>(params_.size()); }

  const std::vector<float>& params() const { return params_; }
  std::vector<float>& mutable_params() { return params_; }
  void SetParams(std::span<const float> p);

  // Scratch space for one forward pass; reusable across calls.
  struct Cache {
    std::vector<float> input;
    std::vector<std::vector<double>> pre;   // pre-activation per layer
    std::vector<std::vector<double>> post;  // post-ReLU per layer
  };

  std::vector<double> Forward(std::span<const float> input) const;
  std::vector<double> Forward(std::span<const float> input,
                              Cache* cache) const;

  // Accumulates dLoss/dparams into grad (size num_params) given
  // dLoss/dQ for each action head output.
  void Backward(const Cache& cache, std::span<const double> dq,
                std::vector<double>* grad) const;

  // Greedy action id under the legal mask; ties break to the lowest id.
  int MaskedArgmax(std::span<const double> q,
                   std::span<const uint8_t> legal_mask) const;

 private:
  struct Layer {
    int in = 0, out = 0;
    int w_off = 0, b_off = 0;  // offsets into the flat parameter vector
  };

  ArchitectureDescriptor arch_;
  GameConfig config_;
  int input_size_ = 0;
  int num_actions_ = 0;
  std::vector<Layer> hidden_;
  Layer value_head_;      // dueling only
  Layer advantage_head_;  // the plain head when dueling is off
  std::vector<float> params_;
};

// Adam with the standard defaults (beta1=0.9, beta2=0.999, eps=1e-8).
class AdamOptimizer {
 public:
  AdamOptimizer(int num_params, double lr);

  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }
  int64_t step_count() const { return t_; }

  void Step(std::span<const double> grad, std::vector<float>* params);

 private:
  double lr_;
  double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  int64_t t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace fsc

#endif  // FSC_NET_H_
