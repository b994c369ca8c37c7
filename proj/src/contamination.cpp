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

#include "mvrbm/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvrbm/error.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

void ContaminationConfig::validate() const {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("contamination fraction must lie in (0,1)");
  if (!(shift_low > 0.0 && shift_low <= shift_high)) throw DomainError("need 0 < shift_low <= shift_high");
}

Dataset contaminate(const Dataset& data, const ContaminationConfig& config) {
  config.validate();
  if (data.empty()) throw DomainError("cannot contaminate an empty dataset");
  const std::size_t n = data.rows();
  const auto& schema = data.schema();

  std::vector<double> sd(data.cols(), 0.0);
  for (std::size_t c = 0; c < data.cols(); ++c) {
    const auto kind = schema.column(c).kind;
    if (kind != ColumnKind::gaussian && kind != ColumnKind::count) continue;
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += data.at(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) var += (data.at(r, c) - mean) * (data.at(r, c) - mean);
    sd[c] = std::sqrt(var / static_cast<double>(n));
  }

  Rng rng(config.seed);
  const auto m = static_cast<std::size_t>(std::llround(config.fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));

  Dataset out = data;
  std::vector<Label> labels(n, Label::inlier);
  std::uniform_real_distribution<double> shift(config.shift_low, config.shift_high);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = order[i];
    labels[r] = Label::outlier;
    for (std::size_t c = 0; c < data.cols(); ++c) {
      const auto& col = schema.column(c);
      double& cell = out.at(r, c);
      switch (col.kind) {
        case ColumnKind::gaussian:
        case ColumnKind::count: {
          const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
          const double moved = cell + sign * shift(rng) * sd[c];
          cell = col.kind == ColumnKind::count ? std::max(0.0, std::round(moved)) : moved;
          break;
        }
        case ColumnKind::binary: cell = 1.0 - cell; break;
        case ColumnKind::nominal: {
          const auto current = static_cast<std::size_t>(cell);
          auto pick = std::uniform_int_distribution<std::size_t>(0, col.cardinality - 2)(rng);
          if (pick >= current) ++pick;
          cell = static_cast<double>(pick);
          break;
        }
      }
    }
  }
  out.set_labels(std::move(labels));
  return out;
}

}  // namespace mvrbm
