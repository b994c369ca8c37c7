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
#include <span>
#include <variant>
#include <vector>

#include "mvrbm/energy.hpp"
#include "mvrbm/model.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

// Generative conditionals P(x_i | h). Each follows from the column's energy by
// exponential-family algebra with natural parameter mu = a_i + sum_k W_ik h_k.
struct Bernoulli {
  double p;
};
struct UnitNormal {
  double mean;
};
struct Categorical {
  std::vector<double> probs;
};
struct Poisson {
  double rate;
};

using VisibleConditional = std::variant<Bernoulli, UnitNormal, Categorical, Poisson>;

struct SamplingOptions {
  // Poisson rates above this signal a diverging chain.
  double poisson_rate_cap = 1e6;
};

VisibleConditional visible_conditional(const Model& model, const HiddenState& h, std::size_t column,
                                       const SamplingOptions& options = {});

// Log pmf (or log pdf for UnitNormal) at x.
double log_probability(const VisibleConditional& dist, double x);
double mean(const VisibleConditional& dist);
double draw(const VisibleConditional& dist, Rng& rng);

// One draw per column of P(x | h).
std::vector<double> sample_visible(const Model& model, const HiddenState& h, Rng& rng,
                                   const SamplingOptions& options = {});

// Draws a record from the visible conditionals given precomputed natural
// parameters `mu` (one per encoded slot). Writes the record and its encoding.
void sample_visible_from_preactivation(const Schema& schema, std::span<const double> mu, Rng& rng,
                                       const SamplingOptions& options, std::span<double> record,
                                       std::span<double> encoded);

}  // namespace mvrbm
