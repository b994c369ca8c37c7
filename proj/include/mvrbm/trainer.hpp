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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvrbm/conditional.hpp"
#include "mvrbm/dataset.hpp"
#include "mvrbm/enumeration.hpp"
#include "mvrbm/kv_config.hpp"
#include "mvrbm/model.hpp"
#include "mvrbm/optimizer.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

struct TrainingConfig {
  std::size_t hidden = 5;
  std::size_t cd_steps = 1;
  OptimizerSettings optimizer;
  // 0 means full batch.
  std::size_t batch_size = 0;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
  double init_scale = 0.01;
  SamplingOptions sampling;

  // K=5, full batch, lr 0.01, momentum 0.8.
  static TrainingConfig small_data_defaults();
  // K=2, batch 500, lr 0.001, Adam(0.85, 0.995).
  static TrainingConfig large_data_defaults();
  // Synthetic benchmark: K=50, batch 50, lr 0.05, plain SGD, 10 epochs.
  static TrainingConfig synthetic_defaults();

  void validate() const;

  // Reads the keys listed in training_config_keys(); absent keys keep the
  // values already in `base`.
  static TrainingConfig from_config(const KeyValueConfig& cfg, TrainingConfig base);
  static TrainingConfig from_config(const KeyValueConfig& cfg);
  // `key = value` lines that from_config reads back to an equal config.
  std::string to_config_text() const;
};

// Keys understood by TrainingConfig::from_config.
std::span<const std::string_view> training_config_keys();

struct ParameterNorms {
  double visible_bias = 0.0;
  double hidden_bias = 0.0;
  double weights = 0.0;
};

struct TrainingReport {
  // Mean free energy over the training rows after each completed epoch.
  std::vector<double> train_free_energy;
  // Same for the validation rows, when a validation set was supplied.
  std::vector<double> validation_free_energy;
  std::size_t epochs_run = 0;
  ParameterNorms final_norms;
};

struct TrainingResult {
  Model model;
  TrainingReport report;
};

// W ~ Normal(0, init_scale^2) from the seed's init stream; a = b = 0.
Model init_model(const Schema& schema, const TrainingConfig& config);

// CD-n estimate over `batch`. Positive statistics use P(h|x); the chain then
// alternates h ~ P(h|x), x ~ P(x|h) n times and the negative statistics use
// P(h|x_hat). n = 0 leaves x_hat = x and yields a zero gradient.
GradientEstimate cd_gradient(const Model& model, const Dataset& batch, std::size_t n, Rng& rng,
                             const SamplingOptions& options = {});
// Same, restricted to the listed rows of `data`.
GradientEstimate cd_gradient(const Model& model, const Dataset& data, std::span<const std::size_t> rows,
                             std::size_t n, Rng& rng, const SamplingOptions& options = {});

// Exact gradient of the mean log-likelihood: data expectation minus model
// expectation of the sufficient statistics, the latter by enumerating x.
GradientEstimate exact_gradient(const Model& model, const Dataset& data, const EnumerationOptions& options = {});

ParameterNorms parameter_norms(const Model& model);

// Mini-batch CD training with per-epoch reshuffling. Deterministic in
// (data, config). Throws DivergenceError carrying the epoch index.
TrainingResult train(const Dataset& data, const TrainingConfig& config, const Dataset* validation = nullptr);

}  // namespace mvrbm
