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

#include "mvrbm/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mvrbm/error.hpp"
#include "mvrbm/kernels.hpp"
#include "mvrbm/numerics.hpp"

namespace mvrbm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double poisson_rate(double mu, const SamplingOptions& options) {
  const double rate = std::exp(mu);
  if (!std::isfinite(rate) || rate > options.poisson_rate_cap)
    throw DivergenceError("Poisson rate " + std::to_string(rate) + " exceeds cap " +
                          std::to_string(options.poisson_rate_cap));
  return rate;
}

// Softmax of `mu` written into `probs`.
void softmax(std::span<const double> mu, std::span<double> probs) {
  const double m = *std::max_element(mu.begin(), mu.end());
  double total = 0.0;
  for (std::size_t c = 0; c < mu.size(); ++c) total += probs[c] = std::exp(mu[c] - m);
  for (auto& p : probs) p /= total;
}

std::size_t draw_index(std::span<const double> probs, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  for (std::size_t c = 0; c + 1 < probs.size(); ++c) {
    cumulative += probs[c];
    if (u < cumulative) return c;
  }
  return probs.size() - 1;
}

double draw_poisson(double rate, Rng& rng) {
  if (rate < 1e-300) return 0.0;
  return static_cast<double>(std::poisson_distribution<long long>(rate)(rng));
}

}  // namespace

VisibleConditional visible_conditional(const Model& model, const HiddenState& h, std::size_t column,
                                       const SamplingOptions& options) {
  if (h.size() != model.hidden()) throw ShapeError("hidden state has wrong size");
  const auto& col = model.schema().column(column);
  const std::size_t slot = model.schema().offset(column);
  const auto& p = model.params();
  auto mu_at = [&](std::size_t j) { return p.visible_bias()[j] + kernels::dot(p.weight_row(j), h.units()); };
  switch (col.kind) {
    case ColumnKind::binary: return Bernoulli{sigmoid(mu_at(slot))};
    case ColumnKind::gaussian: return UnitNormal{mu_at(slot)};
    case ColumnKind::count: return Poisson{poisson_rate(mu_at(slot), options)};
    case ColumnKind::nominal: {
      std::vector<double> mu(col.cardinality);
      for (std::size_t c = 0; c < mu.size(); ++c) mu[c] = mu_at(slot + c);
      Categorical dist{std::vector<double>(col.cardinality)};
      softmax(mu, dist.probs);
      return dist;
    }
  }
  throw DomainError("unknown column kind");
}

double log_probability(const VisibleConditional& dist, double x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  return std::visit(
      Overloaded{
          [&](const Bernoulli& d) {
            if (x == 1.0) return std::log(d.p);
            if (x == 0.0) return std::log1p(-d.p);
            return kNegInf;
          },
          [&](const UnitNormal& d) {
            const double r = x - d.mean;
            return -0.5 * r * r - 0.5 * std::log(2.0 * std::numbers::pi);
          },
          [&](const Categorical& d) {
            if (x < 0.0 || x != std::floor(x) || x >= static_cast<double>(d.probs.size())) return kNegInf;
            return std::log(d.probs[static_cast<std::size_t>(x)]);
          },
          [&](const Poisson& d) {
            if (x < 0.0 || x != std::floor(x)) return kNegInf;
            return x * std::log(d.rate) - d.rate - log_factorial(x);
          },
      },
      dist);
}

double mean(const VisibleConditional& dist) {
  return std::visit(Overloaded{
                        [](const Bernoulli& d) { return d.p; },
                        [](const UnitNormal& d) { return d.mean; },
                        [](const Categorical& d) {
                          double m = 0.0;
                          for (std::size_t c = 0; c < d.probs.size(); ++c) m += static_cast<double>(c) * d.probs[c];
                          return m;
                        },
                        [](const Poisson& d) { return d.rate; },
                    },
                    dist);
}

double draw(const VisibleConditional& dist, Rng& rng) {
  return std::visit(Overloaded{
                        [&](const Bernoulli& d) {
                          return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < d.p ? 1.0 : 0.0;
                        },
                        [&](const UnitNormal& d) { return d.mean + std::normal_distribution<double>(0.0, 1.0)(rng); },
                        [&](const Categorical& d) { return static_cast<double>(draw_index(d.probs, rng)); },
                        [&](const Poisson& d) { return draw_poisson(d.rate, rng); },
                    },
                    dist);
}

void sample_visible_from_preactivation(const Schema& schema, std::span<const double> mu, Rng& rng,
                                       const SamplingOptions& options, std::span<double> record,
                                       std::span<double> encoded) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const auto& col = schema.column(i);
    const std::size_t slot = schema.offset(i);
    double x = 0.0;
    switch (col.kind) {
      case ColumnKind::binary: x = uniform(rng) < sigmoid(mu[slot]) ? 1.0 : 0.0; break;
      case ColumnKind::gaussian:
        if (!std::isfinite(mu[slot])) throw DivergenceError("non-finite gaussian mean");
        normal.reset();
        x = mu[slot] + normal(rng);
        break;
      case ColumnKind::count: x = draw_poisson(poisson_rate(mu[slot], options), rng); break;
      case ColumnKind::nominal: {
        auto probs = encoded.subspan(slot, col.cardinality);
        softmax(mu.subspan(slot, col.cardinality), probs);
        const std::size_t c = draw_index(probs, rng);
        std::fill(probs.begin(), probs.end(), 0.0);
        probs[c] = 1.0;
        record[i] = static_cast<double>(c);
        continue;
      }
    }
    record[i] = x;
    encoded[slot] = x;
  }
}

std::vector<double> sample_visible(const Model& model, const HiddenState& h, Rng& rng,
                                   const SamplingOptions& options) {
  if (h.size() != model.hidden()) throw ShapeError("hidden state has wrong size");
  std::vector<double> mu(model.width());
  visible_preactivation(model, h.units(), mu);
  std::vector<double> record(model.schema().size());
  std::vector<double> encoded(model.width());
  sample_visible_from_preactivation(model.schema(), mu, rng, options, record, encoded);
  return record;
}

}  // namespace mvrbm
