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

#include <cstdint>

#include "mvrbm/dataset.hpp"

namespace mvrbm {

struct ContaminationConfig {
  double fraction = 0.10;
  // Numeric cells move by s * sd with s ~ Uniform(shift_low, shift_high).
  double shift_low = 2.0;
  double shift_high = 3.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Plants outliers in round(fraction * n) rows chosen without replacement:
//   gaussian  x + sign * s * sd        (sd of the clean column, random sign)
//   count     round(x + sign * s * sd), clamped at 0
//   binary    1 - x
//   nominal   uniformly chosen different category
// Unchosen rows are untouched. The result carries labels.
Dataset contaminate(const Dataset& data, const ContaminationConfig& config);

}  // namespace mvrbm
