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

#include "mvrbm/trainer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mvrbm/energy.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/kernels.hpp"
#include "mvrbm/numerics.hpp"

namespace mvrbm {

namespace {

constexpr std::array<std::string_view, 13> kTrainingKeys = {
    "hidden",     "cd_steps",   "learning_rate", "optimizer", "momentum",   "adam_beta1",       "adam_beta2",
    "adam_epsilon", "batch_size", "epochs",       "seed",      "init_scale", "poisson_rate_cap",
};

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double norm(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

// Scratch buffers for one CD chain, reused across rows.
struct ChainBuffers {
  explicit ChainBuffers(const Model& model)
      : encoded(model.width()),
        z(model.hidden()),
        h_pos(model.hidden()),
        h_neg(model.hidden()),
        h(model.hidden()),
        mu(model.width()),
        record(model.schema().size()) {}

  std::vector<double> encoded;
  std::vector<double> z;
  std::vector<double> h_pos;
  std::vector<double> h_neg;
  std::vector<double> h;
  std::vector<double> mu;
  std::vector<double> record;
};

void hidden_means(const Model& model, std::span<const double> encoded, std::span<double> z, std::span<double> out) {
  hidden_preactivation_encoded(model, encoded, z);
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = sigmoid(z[k]);
}

// g += sign * (s, h, s h^T)
void accumulate(GradientEstimate& g, std::span<const double> s, std::span<const double> h, double sign) {
  kernels::axpy(sign, s, g.visible_bias());
  kernels::axpy(sign, h, g.hidden_bias());
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] != 0.0) kernels::axpy(sign * s[j], h, g.weight_row(j));
}

}  // namespace

TrainingConfig TrainingConfig::small_data_defaults() {
  TrainingConfig c;
  c.hidden = 5;
  c.batch_size = 0;
  c.optimizer.kind = OptimizerKind::momentum;
  c.optimizer.learning_rate = 0.01;
  c.optimizer.momentum = 0.8;
  return c;
}

TrainingConfig TrainingConfig::large_data_defaults() {
  TrainingConfig c;
  c.hidden = 2;
  c.batch_size = 500;
  c.optimizer.kind = OptimizerKind::adam;
  c.optimizer.learning_rate = 0.001;
  c.optimizer.beta1 = 0.85;
  c.optimizer.beta2 = 0.995;
  return c;
}

TrainingConfig TrainingConfig::synthetic_defaults() {
  TrainingConfig c;
  c.hidden = 50;
  c.batch_size = 50;
  c.epochs = 10;
  c.optimizer.kind = OptimizerKind::sgd;
  c.optimizer.learning_rate = 0.05;
  return c;
}

void TrainingConfig::validate() const {
  if (hidden == 0) throw DomainError("hidden units must be positive");
  if (cd_steps == 0) throw DomainError("cd_steps must be positive");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) throw DomainError("init_scale must be non-negative");
  if (!(sampling.poisson_rate_cap > 0.0)) throw DomainError("poisson_rate_cap must be positive");
  optimizer.validate();
}

std::span<const std::string_view> training_config_keys() { return kTrainingKeys; }

TrainingConfig TrainingConfig::from_config(const KeyValueConfig& cfg, TrainingConfig base) {
  TrainingConfig c = std::move(base);
  c.hidden = cfg.get_uint("hidden", c.hidden);
  c.cd_steps = cfg.get_uint("cd_steps", c.cd_steps);
  c.optimizer.learning_rate = cfg.get_double("learning_rate", c.optimizer.learning_rate);
  if (const auto name = cfg.get("optimizer")) c.optimizer.kind = parse_optimizer(*name);
  c.optimizer.momentum = cfg.get_double("momentum", c.optimizer.momentum);
  c.optimizer.beta1 = cfg.get_double("adam_beta1", c.optimizer.beta1);
  c.optimizer.beta2 = cfg.get_double("adam_beta2", c.optimizer.beta2);
  c.optimizer.epsilon = cfg.get_double("adam_epsilon", c.optimizer.epsilon);
  if (const auto batch = cfg.get("batch_size")) c.batch_size = *batch == "full" ? 0 : cfg.get_uint("batch_size", 0);
  c.epochs = cfg.get_uint("epochs", c.epochs);
  c.seed = cfg.get_uint("seed", c.seed);
  c.init_scale = cfg.get_double("init_scale", c.init_scale);
  c.sampling.poisson_rate_cap = cfg.get_double("poisson_rate_cap", c.sampling.poisson_rate_cap);
  c.validate();
  return c;
}

TrainingConfig TrainingConfig::from_config(const KeyValueConfig& cfg) { return from_config(cfg, TrainingConfig{}); }

std::string TrainingConfig::to_config_text() const {
  std::ostringstream out;
  out << "hidden = " << hidden << '\n'
      << "cd_steps = " << cd_steps << '\n'
      << "learning_rate = " << shortest(optimizer.learning_rate) << '\n'
      << "optimizer = " << to_string(optimizer.kind) << '\n'
      << "momentum = " << shortest(optimizer.momentum) << '\n'
      << "adam_beta1 = " << shortest(optimizer.beta1) << '\n'
      << "adam_beta2 = " << shortest(optimizer.beta2) << '\n'
      << "adam_epsilon = " << shortest(optimizer.epsilon) << '\n'
      << "batch_size = " << (batch_size == 0 ? std::string("full") : std::to_string(batch_size)) << '\n'
      << "epochs = " << epochs << '\n'
      << "seed = " << seed << '\n'
      << "init_scale = " << shortest(init_scale) << '\n'
      << "poisson_rate_cap = " << shortest(sampling.poisson_rate_cap) << '\n';
  return out.str();
}

Model init_model(const Schema& schema, const TrainingConfig& config) {
  config.validate();
  Model model(schema, config.hidden);
  Rng rng(derive_seed(config.seed, Stage::init));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& w : model.params().weights()) w = config.init_scale * normal(rng);
  return model;
}

GradientEstimate cd_gradient(const Model& model, const Dataset& data, std::span<const std::size_t> rows,
                             std::size_t n, Rng& rng, const SamplingOptions& options) {
  if (!(data.schema() == model.schema())) throw ShapeError("batch schema does not match model schema");
  if (rows.empty()) throw DomainError("cd_gradient needs a non-empty batch");
  GradientEstimate grad(model.params().layout());
  ChainBuffers buf(model);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  for (const std::size_t r : rows) {
    // With no Gibbs steps the negative phase is the positive one.
    if (n == 0) continue;
    encode_record(data.row(r), model.schema(), buf.encoded);
    hidden_means(model, buf.encoded, buf.z, buf.h_pos);
    accumulate(grad, buf.encoded, buf.h_pos, 1.0);
    std::span<const double> h_mean = buf.h_pos;
    for (std::size_t step = 0; step < n; ++step) {
      for (std::size_t k = 0; k < buf.h.size(); ++k) buf.h[k] = uniform(rng) < h_mean[k] ? 1.0 : 0.0;
      visible_preactivation(model, buf.h, buf.mu);
      sample_visible_from_preactivation(model.schema(), buf.mu, rng, options, buf.record, buf.encoded);
      hidden_means(model, buf.encoded, buf.z, buf.h_neg);
      h_mean = buf.h_neg;
    }
    accumulate(grad, buf.encoded, buf.h_neg, -1.0);
  }
  const double scale = 1.0 / static_cast<double>(rows.size());
  for (auto& g : grad.all()) g *= scale;
  return grad;
}

GradientEstimate cd_gradient(const Model& model, const Dataset& batch, std::size_t n, Rng& rng,
                             const SamplingOptions& options) {
  std::vector<std::size_t> rows(batch.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return cd_gradient(model, batch, rows, n, rng, options);
}

GradientEstimate exact_gradient(const Model& model, const Dataset& data, const EnumerationOptions& options) {
  if (!(data.schema() == model.schema())) throw ShapeError("dataset schema does not match model schema");
  if (data.empty()) throw DomainError("exact_gradient needs data");
  if (model.hidden() > options.max_hidden) throw TooLargeError("hidden layer too large to enumerate");

  GradientEstimate grad(model.params().layout());
  std::vector<double> encoded(model.width());
  std::vector<double> z(model.hidden());
  std::vector<double> h(model.hidden());

  const double inv_n = 1.0 / static_cast<double>(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    encode_record(data.row(r), model.schema(), encoded);
    hidden_means(model, encoded, z, h);
    accumulate(grad, encoded, h, inv_n);
  }

  // Model expectation: weights exp(-F(x) - log Z) over the enumerated states.
  std::vector<std::vector<double>> states;
  std::vector<double> neg_f;
  for_each_visible_state(model.schema(), options, [&](std::span<const double> x) {
    states.emplace_back(x.begin(), x.end());
    neg_f.push_back(-free_energy(model, x));
  });
  const double log_z = log_sum_exp(neg_f);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double p = std::exp(neg_f[s] - log_z);
    encode_record(states[s], model.schema(), encoded);
    hidden_means(model, encoded, z, h);
    accumulate(grad, encoded, h, -p);
  }
  return grad;
}

ParameterNorms parameter_norms(const Model& model) {
  const auto& p = model.params();
  return {norm(p.visible_bias()), norm(p.hidden_bias()), norm(p.weights())};
}

namespace {

double mean_free_energy(const Model& model, const Dataset& data, std::size_t epoch) {
  const auto f = free_energy_batch(model, data);
  double sum = 0.0;
  for (const double v : f) sum += v;
  const double m = sum / static_cast<double>(f.size());
  if (!std::isfinite(m)) throw DivergenceError("non-finite mean free energy", static_cast<long>(epoch));
  return m;
}

}  // namespace

TrainingResult train(const Dataset& data, const TrainingConfig& config, const Dataset* validation) {
  config.validate();
  if (data.empty()) throw DomainError("cannot train on an empty dataset");
  if (validation != nullptr && !(validation->schema() == data.schema()))
    throw ShapeError("validation schema does not match training schema");

  TrainingResult result{init_model(data.schema(), config), {}};
  Model& model = result.model;
  OptimizerState state;
  Rng rng(derive_seed(config.seed, Stage::train));

  const std::size_t n = data.rows();
  const std::size_t batch = config.batch_size == 0 ? n : std::min(config.batch_size, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    try {
      for (std::size_t start = 0; start < n; start += batch) {
        const std::span<const std::size_t> rows(order.data() + start, std::min(batch, n - start));
        const auto grad = cd_gradient(model, data, rows, config.cd_steps, rng, config.sampling);
        apply_update(model.params(), grad, state, config.optimizer);
      }
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), static_cast<long>(epoch));
    }
    result.report.train_free_energy.push_back(mean_free_energy(model, data, epoch));
    if (validation != nullptr && !validation->empty())
      result.report.validation_free_energy.push_back(mean_free_energy(model, *validation, epoch));
    ++result.report.epochs_run;
  }
  result.report.final_norms = parameter_norms(model);
  return result;
}

}  // namespace mvrbm
