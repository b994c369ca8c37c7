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

// Exhaustive oracles for tiny models. These walk hidden and/or visible state
// spaces explicitly and share no code path with the closed-form free energy.

#include <cstddef>
#include <functional>
#include <span>

#include "mvrbm/dataset.hpp"
#include "mvrbm/model.hpp"

namespace mvrbm {

struct EnumerationOptions {
  // Count columns are enumerated over 0..count_bound inclusive.
  std::size_t count_bound = 60;
  std::size_t max_visible_states = 1'000'000;
  std::size_t max_hidden = 12;
};

// -log sum_{h in {0,1}^K} exp(-E(x,h)), evaluated with total_energy per state.
double brute_force_free_energy(const Model& model, std::span<const double> record, std::size_t max_hidden = 20);

// Number of visible configurations of an all-discrete schema.
std::size_t visible_state_count(const Schema& schema, std::size_t count_bound);

// Calls `visit` once per visible configuration in lexicographic order
// (last column fastest). Requires an all-discrete schema.
void for_each_visible_state(const Schema& schema, const EnumerationOptions& options,
                            const std::function<void(std::span<const double>)>& visit);

// log Z = log sum_x sum_h exp(-E(x,h)). Sums over h outermost and factorizes
// the visible sum per column given h.
double log_partition_exhaustive(const Model& model, const EnumerationOptions& options = {});

// Mean log-likelihood of `data`: mean_x(-F(x)) - log Z.
double log_likelihood_exhaustive(const Model& model, const Dataset& data, const EnumerationOptions& options = {});

}  // namespace mvrbm
