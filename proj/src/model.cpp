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

#include "mvrbm/model.hpp"

#include <algorithm>
#include <cmath>

#include "mvrbm/error.hpp"

namespace mvrbm {

bool ParameterBlock::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Model::Model(Schema schema, std::size_t hidden)
    : schema_(std::move(schema)), params_(ParameterLayout{schema_.encoded_width(), hidden}) {
  if (hidden == 0) throw DomainError("model needs at least one hidden unit");
  if (schema_.size() == 0) throw DomainError("model needs a non-empty schema");
}

void Model::validate() const {
  if (!params_.all_finite()) throw DomainError("model has non-finite parameters");
}

}  // namespace mvrbm
