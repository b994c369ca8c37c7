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
#include "mvrbm/schema.hpp"

namespace mvrbm {

// Offsets of the parameter blocks inside one flat vector:
//   [ a : width | b : K | W : width x K, row-major by encoded slot ]
// Nominal column i owns slots offset(i) .. offset(i)+C-1, so a_ic and W_ikc
// sit at the slot of category c, matching encode_record.
struct ParameterLayout {
  std::size_t width = 0;
  std::size_t hidden = 0;

  std::size_t visible_bias_offset() const noexcept { return 0; }
  std::size_t hidden_bias_offset() const noexcept { return width; }
  std::size_t weights_offset() const noexcept { return width + hidden; }
  std::size_t size() const noexcept { return width + hidden + width * hidden; }

  friend bool operator==(const ParameterLayout&, const ParameterLayout&) = default;
};

// Flat parameter-shaped vector with named views. Shared by Model and by
// gradient estimates so that optimizers can treat both as plain arrays.
class ParameterBlock {
 public:
  ParameterBlock() = default;
  explicit ParameterBlock(ParameterLayout layout) : layout_(layout), values_(layout.size(), 0.0) {}

  const ParameterLayout& layout() const noexcept { return layout_; }

  std::span<double> all() noexcept { return values_; }
  std::span<const double> all() const noexcept { return values_; }

  std::span<double> visible_bias() noexcept { return all().subspan(0, layout_.width); }
  std::span<const double> visible_bias() const noexcept { return all().subspan(0, layout_.width); }
  std::span<double> hidden_bias() noexcept { return all().subspan(layout_.hidden_bias_offset(), layout_.hidden); }
  std::span<const double> hidden_bias() const noexcept {
    return all().subspan(layout_.hidden_bias_offset(), layout_.hidden);
  }
  std::span<double> weights() noexcept { return all().subspan(layout_.weights_offset()); }
  std::span<const double> weights() const noexcept { return all().subspan(layout_.weights_offset()); }

  // The K couplings of encoded slot `slot`.
  std::span<double> weight_row(std::size_t slot) noexcept {
    return all().subspan(layout_.weights_offset() + slot * layout_.hidden, layout_.hidden);
  }
  std::span<const double> weight_row(std::size_t slot) const noexcept {
    return all().subspan(layout_.weights_offset() + slot * layout_.hidden, layout_.hidden);
  }
  double& weight(std::size_t slot, std::size_t k) { return values_[layout_.weights_offset() + slot * layout_.hidden + k]; }
  double weight(std::size_t slot, std::size_t k) const {
    return values_[layout_.weights_offset() + slot * layout_.hidden + k];
  }

  bool all_finite() const noexcept;

  friend bool operator==(const ParameterBlock&, const ParameterBlock&) = default;

 private:
  ParameterLayout layout_;
  std::vector<double> values_;
};

// Mixed-variate RBM parameters bound to a schema and hidden size. Also carries
// the standardization fitted on its training data so scoring can replay it.
class Model {
 public:
  // All parameters zero.
  Model(Schema schema, std::size_t hidden);

  const Schema& schema() const noexcept { return schema_; }
  std::size_t hidden() const noexcept { return params_.layout().hidden; }
  std::size_t width() const noexcept { return params_.layout().width; }

  ParameterBlock& params() noexcept { return params_; }
  const ParameterBlock& params() const noexcept { return params_; }

  const StandardizationStats& standardization() const noexcept { return standardization_; }
  void set_standardization(StandardizationStats stats) { standardization_ = std::move(stats); }

  // Throws DomainError if any parameter is non-finite.
  void validate() const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Schema schema_;
  ParameterBlock params_;
  StandardizationStats standardization_;
};

}  // namespace mvrbm
