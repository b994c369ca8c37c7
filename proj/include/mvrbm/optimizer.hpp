// Copyright 2026 The mvrbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mvrbm/model.hpp"

namespace mvrbm {

enum class OptimizerKind { sgd, momentum, adam };

std::string_view to_string(OptimizerKind kind) noexcept;
OptimizerKind parse_optimizer(std::string_view name);

struct OptimizerSettings {
  OptimizerKind kind = OptimizerKind::momentum;
  double learning_rate = 0.01;
  double momentum = 0.8;
  double beta1 = 0.85;
  double beta2 = 0.995;
  double epsilon = 1e-8;

  // Throws DomainError on out-of-range hyperparameters.
  void validate() const;
};

// A parameter-shaped ascent direction (da, db, dW).
using GradientEstimate = ParameterBlock;

struct OptimizerState {
  std::vector<double> velocity;  // momentum
  std::vector<double> first;     // adam m
  std::vector<double> second;    // adam v
  std::uint64_t steps = 0;
};

// Gradient ascent step, theta <- theta + update(g):
//   sgd       theta += lr * g
//   momentum  v = mu * v + lr * g; theta += v
//   adam      bias-corrected first/second moments with (beta1, beta2, eps)
// Throws DivergenceError if g has a non-finite entry; theta is then untouched.
void apply_update(ParameterBlock& params, const GradientEstimate& grad, OptimizerState& state,
                  const OptimizerSettings& settings);

}  // namespace mvrbm
