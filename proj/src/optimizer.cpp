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

#include "mvrbm/optimizer.hpp"

#include <cmath>
#include <string>

#include "mvrbm/error.hpp"
#include "mvrbm/kernels.hpp"

namespace mvrbm {

namespace {

std::string describe_slot(const ParameterLayout& layout, std::size_t index) {
  if (index < layout.hidden_bias_offset()) return "visible bias " + std::to_string(index);
  if (index < layout.weights_offset()) return "hidden bias " + std::to_string(index - layout.width);
  const std::size_t w = index - layout.weights_offset();
  return "weight (" + std::to_string(w / layout.hidden) + ", " + std::to_string(w % layout.hidden) + ")";
}

}  // namespace

std::string_view to_string(OptimizerKind kind) noexcept {
  switch (kind) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::momentum: return "momentum";
    case OptimizerKind::adam: return "adam";
  }
  return "?";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "momentum") return OptimizerKind::momentum;
  if (name == "adam") return OptimizerKind::adam;
  throw DomainError("unknown optimizer '" + std::string(name) + "' (expected sgd, momentum or adam)");
}

void OptimizerSettings::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw DomainError("learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw DomainError("momentum must lie in [0,1)");
  if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
    throw DomainError("adam betas must lie in (0,1)");
  if (!(epsilon > 0.0)) throw DomainError("adam epsilon must be positive");
}

void apply_update(ParameterBlock& params, const GradientEstimate& grad, OptimizerState& state,
                  const OptimizerSettings& settings) {
  if (!(grad.layout() == params.layout())) throw ShapeError("gradient shape does not match model");
  const auto g = grad.all();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!std::isfinite(g[i]))
      throw DivergenceError("non-finite gradient entry for " + describe_slot(grad.layout(), i));

  auto theta = params.all();
  const auto& k = kernels::active();
  switch (settings.kind) {
    case OptimizerKind::sgd:
      k.axpy(settings.learning_rate, g.data(), theta.data(), g.size());
      break;
    case OptimizerKind::momentum:
      state.velocity.resize(g.size(), 0.0);
      k.axpby(settings.learning_rate, g.data(), settings.momentum, state.velocity.data(), g.size());
      k.axpy(1.0, state.velocity.data(), theta.data(), g.size());
      break;
    case OptimizerKind::adam: {
      state.first.resize(g.size(), 0.0);
      state.second.resize(g.size(), 0.0);
      const double t = static_cast<double>(state.steps + 1);
      const double correction2 = std::sqrt(1.0 - std::pow(settings.beta2, t));
      const kernels::AdamCoefficients c{
          settings.beta1,
          settings.beta2,
          settings.learning_rate * correction2 / (1.0 - std::pow(settings.beta1, t)),
          settings.epsilon * correction2,
      };
      k.adam_step(c, g.data(), state.first.data(), state.second.data(), theta.data(), g.size());
      break;
    }
  }
  ++state.steps;
}

}  // namespace mvrbm
