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
#include <vector>

#include "mvrbm/dataset.hpp"
#include "mvrbm/model.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

// Binary hidden configuration h in {0,1}^K, stored as 0.0 / 1.0.
class HiddenState {
 public:
  HiddenState() = default;
  explicit HiddenState(std::size_t k) : units_(k, 0.0) {}
  explicit HiddenState(std::vector<double> units);

  std::size_t size() const noexcept { return units_.size(); }
  std::span<const double> units() const noexcept { return units_; }
  bool operator[](std::size_t k) const { return units_.at(k) != 0.0; }
  void set(std::size_t k, bool on) { units_.at(k) = on ? 1.0 : 0.0; }

  // h_k = bit k of `bits`.
  static HiddenState from_bits(std::size_t k, unsigned long long bits);

  friend bool operator==(const HiddenState&, const HiddenState&) = default;

 private:
  std::vector<double> units_;
};

// Per-column energy terms.
//   binary   E = -a x            G_k = -W_k x
//   gaussian E = x^2/2 - a x     G_k = -W_k x
//   nominal  E = -a_c            G_k = -W_kc      (c = x)
//   count    E = log x! - a x    G_k = -W_k x
double sub_energy(const Model& model, std::size_t column, double x);
double sub_coupling(const Model& model, std::size_t column, std::size_t k, double x);

// E(x,h) = sum_i E_i(x_i) + sum_k (-b_k + sum_i G_ik(x_i)) h_k
double total_energy(const Model& model, std::span<const double> record, const HiddenState& h);

// z_k = b_k - sum_i G_ik(x_i) for an encoded record s (z = b + W^T s).
void hidden_preactivation_encoded(const Model& model, std::span<const double> encoded, std::span<double> z);
std::vector<double> hidden_preactivation(const Model& model, std::span<const double> record);

// P(h_k = 1 | x) = sigmoid(z_k).
std::vector<double> hidden_activation(const Model& model, std::span<const double> record);

// mu_j = a_j + sum_k W_jk h_k for every encoded slot j.
void visible_preactivation(const Model& model, std::span<const double> h, std::span<double> mu);

// sum_i E_i(x_i); the h = 0 energy.
double visible_energy(const Model& model, std::span<const double> record);

// F(x) = sum_i E_i(x_i) - sum_k softplus(z_k). Linear in width * K.
double free_energy(const Model& model, std::span<const double> record);
std::vector<double> free_energy_batch(const Model& model, const Dataset& data);

HiddenState sample_hidden(const Model& model, std::span<const double> record, Rng& rng);

}  // namespace mvrbm
