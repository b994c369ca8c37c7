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

#include "mvrbm/enumeration.hpp"

#include <vector>

#include "mvrbm/energy.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/numerics.hpp"

namespace mvrbm {

namespace {

std::size_t domain_size(const ColumnSpec& col, std::size_t count_bound) {
  switch (col.kind) {
    case ColumnKind::binary: return 2;
    case ColumnKind::nominal: return col.cardinality;
    case ColumnKind::count: return count_bound + 1;
    case ColumnKind::gaussian: break;
  }
  throw DomainError("gaussian column '" + col.name + "' cannot be enumerated");
}

void check_enumerable(const Model& model, const EnumerationOptions& options) {
  if (model.hidden() > options.max_hidden)
    throw TooLargeError("hidden layer too large to enumerate: K = " + std::to_string(model.hidden()));
  const std::size_t states = visible_state_count(model.schema(), options.count_bound);
  if (states > options.max_visible_states)
    throw TooLargeError("visible state space too large to enumerate: " + std::to_string(states));
}

}  // namespace

double brute_force_free_energy(const Model& model, std::span<const double> record, std::size_t max_hidden) {
  const std::size_t k = model.hidden();
  if (k > max_hidden || k > 20) throw TooLargeError("brute force needs K <= 20, got " + std::to_string(k));
  std::vector<double> neg_energy(std::size_t{1} << k);
  for (unsigned long long bits = 0; bits < neg_energy.size(); ++bits)
    neg_energy[bits] = -total_energy(model, record, HiddenState::from_bits(k, bits));
  return -log_sum_exp(neg_energy);
}

std::size_t visible_state_count(const Schema& schema, std::size_t count_bound) {
  std::size_t total = 1;
  for (const auto& col : schema.columns()) {
    const std::size_t d = domain_size(col, count_bound);
    if (total > std::numeric_limits<std::size_t>::max() / d) return std::numeric_limits<std::size_t>::max();
    total *= d;
  }
  return total;
}

void for_each_visible_state(const Schema& schema, const EnumerationOptions& options,
                            const std::function<void(std::span<const double>)>& visit) {
  const std::size_t states = visible_state_count(schema, options.count_bound);
  if (states > options.max_visible_states)
    throw TooLargeError("visible state space too large to enumerate: " + std::to_string(states));
  std::vector<std::size_t> sizes;
  for (const auto& col : schema.columns()) sizes.push_back(domain_size(col, options.count_bound));
  std::vector<double> record(schema.size(), 0.0);
  for (std::size_t s = 0; s < states; ++s) {
    visit(record);
    for (std::size_t i = record.size(); i-- > 0;) {
      if (record[i] + 1.0 < static_cast<double>(sizes[i])) {
        record[i] += 1.0;
        break;
      }
      record[i] = 0.0;
    }
  }
}

double log_partition_exhaustive(const Model& model, const EnumerationOptions& options) {
  check_enumerable(model, options);
  const auto& schema = model.schema();
  const std::size_t k = model.hidden();
  const auto b = model.params().hidden_bias();
  std::vector<double> per_h(std::size_t{1} << k);
  std::vector<double> terms;
  for (unsigned long long bits = 0; bits < per_h.size(); ++bits) {
    const auto h = HiddenState::from_bits(k, bits);
    double log_weight = 0.0;
    for (std::size_t kk = 0; kk < k; ++kk)
      if (h[kk]) log_weight += b[kk];
    for (std::size_t i = 0; i < schema.size(); ++i) {
      const std::size_t d = domain_size(schema.column(i), options.count_bound);
      terms.assign(d, 0.0);
      for (std::size_t v = 0; v < d; ++v) {
        const double x = static_cast<double>(v);
        double e = sub_energy(model, i, x);
        for (std::size_t kk = 0; kk < k; ++kk)
          if (h[kk]) e += sub_coupling(model, i, kk, x);
        terms[v] = -e;
      }
      log_weight += log_sum_exp(terms);
    }
    per_h[bits] = log_weight;
  }
  return log_sum_exp(per_h);
}

double log_likelihood_exhaustive(const Model& model, const Dataset& data, const EnumerationOptions& options) {
  if (data.empty()) throw DomainError("log-likelihood of an empty dataset");
  const auto f = free_energy_batch(model, data);
  double mean_neg_f = 0.0;
  for (const double v : f) mean_neg_f -= v;
  mean_neg_f /= static_cast<double>(f.size());
  return mean_neg_f - log_partition_exhaustive(model, options);
}

}  // namespace mvrbm
