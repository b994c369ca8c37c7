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

#include "mvrbm/energy.hpp"

#include <cmath>

#include "mvrbm/error.hpp"
#include "mvrbm/kernels.hpp"
#include "mvrbm/numerics.hpp"

namespace mvrbm {

namespace {

void check_cell(const ColumnSpec& col, double x) {
  if (!col.admits(x)) throw DomainError("value outside the domain of column '" + col.name + "'");
}

void check_record(const Model& model, std::span<const double> record) {
  if (record.size() != model.schema().size()) throw ShapeError("record does not match model schema");
}

}  // namespace

HiddenState::HiddenState(std::vector<double> units) : units_(std::move(units)) {
  for (const double u : units_)
    if (u != 0.0 && u != 1.0) throw DomainError("hidden state entries must be 0 or 1");
}

HiddenState HiddenState::from_bits(std::size_t k, unsigned long long bits) {
  HiddenState h(k);
  for (std::size_t j = 0; j < k; ++j) h.units_[j] = ((bits >> j) & 1ULL) ? 1.0 : 0.0;
  return h;
}

double sub_energy(const Model& model, std::size_t column, double x) {
  const auto& col = model.schema().column(column);
  check_cell(col, x);
  const auto a = model.params().visible_bias();
  const std::size_t slot = model.schema().offset(column);
  switch (col.kind) {
    case ColumnKind::binary: return -a[slot] * x;
    case ColumnKind::gaussian: return 0.5 * x * x - a[slot] * x;
    case ColumnKind::nominal: return -a[slot + static_cast<std::size_t>(x)];
    case ColumnKind::count: return log_factorial(x) - a[slot] * x;
  }
  return 0.0;
}

double sub_coupling(const Model& model, std::size_t column, std::size_t k, double x) {
  const auto& col = model.schema().column(column);
  check_cell(col, x);
  if (k >= model.hidden()) throw ShapeError("hidden index out of range");
  const std::size_t slot = model.schema().offset(column);
  if (col.kind == ColumnKind::nominal) return -model.params().weight(slot + static_cast<std::size_t>(x), k);
  return -model.params().weight(slot, k) * x;
}

double total_energy(const Model& model, std::span<const double> record, const HiddenState& h) {
  check_record(model, record);
  if (h.size() != model.hidden()) throw ShapeError("hidden state has wrong size");
  const auto b = model.params().hidden_bias();
  double energy = 0.0;
  for (std::size_t i = 0; i < record.size(); ++i) energy += sub_energy(model, i, record[i]);
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!h[k]) continue;
    double term = -b[k];
    for (std::size_t i = 0; i < record.size(); ++i) term += sub_coupling(model, i, k, record[i]);
    energy += term;
  }
  return energy;
}

void hidden_preactivation_encoded(const Model& model, std::span<const double> encoded, std::span<double> z) {
  const auto& p = model.params();
  const auto b = p.hidden_bias();
  std::copy(b.begin(), b.end(), z.begin());
  for (std::size_t j = 0; j < encoded.size(); ++j) {
    if (encoded[j] == 0.0) continue;
    kernels::axpy(encoded[j], p.weight_row(j), z);
  }
}

std::vector<double> hidden_preactivation(const Model& model, std::span<const double> record) {
  check_record(model, record);
  const auto encoded = encode_record(record, model.schema());
  std::vector<double> z(model.hidden());
  hidden_preactivation_encoded(model, encoded, z);
  return z;
}

std::vector<double> hidden_activation(const Model& model, std::span<const double> record) {
  auto z = hidden_preactivation(model, record);
  for (auto& v : z) v = sigmoid(v);
  return z;
}

void visible_preactivation(const Model& model, std::span<const double> h, std::span<double> mu) {
  const auto& p = model.params();
  const auto a = p.visible_bias();
  for (std::size_t j = 0; j < a.size(); ++j) mu[j] = a[j] + kernels::dot(p.weight_row(j), h);
}

double visible_energy(const Model& model, std::span<const double> record) {
  check_record(model, record);
  double energy = 0.0;
  for (std::size_t i = 0; i < record.size(); ++i) energy += sub_energy(model, i, record[i]);
  return energy;
}

double free_energy(const Model& model, std::span<const double> record) {
  const double base = visible_energy(model, record);
  const auto z = hidden_preactivation(model, record);
  double hidden_term = 0.0;
  for (const double v : z) hidden_term += softplus(v);
  return base - hidden_term;
}

std::vector<double> free_energy_batch(const Model& model, const Dataset& data) {
  if (!(data.schema() == model.schema())) throw ShapeError("dataset schema does not match model schema");
  std::vector<double> out;
  out.reserve(data.rows());
  std::vector<double> encoded(model.width());
  std::vector<double> z(model.hidden());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.row(r);
    encode_record(row, model.schema(), encoded);
    hidden_preactivation_encoded(model, encoded, z);
    double hidden_term = 0.0;
    for (const double v : z) hidden_term += softplus(v);
    out.push_back(visible_energy(model, row) - hidden_term);
  }
  return out;
}

HiddenState sample_hidden(const Model& model, std::span<const double> record, Rng& rng) {
  const auto p = hidden_activation(model, record);
  HiddenState h(p.size());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t k = 0; k < p.size(); ++k) h.set(k, uniform(rng) < p[k]);
  return h;
}

}  // namespace mvrbm
