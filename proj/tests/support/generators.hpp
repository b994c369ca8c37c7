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


// Hand-rolled generators shared by the property tests.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mvrbm/dataset.hpp"
#include "mvrbm/model.hpp"
#include "mvrbm/schema.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm::testing {

struct SchemaShape {
  std::size_t min_columns = 1;
  std::size_t max_columns = 4;
  std::size_t max_cardinality = 4;
  bool gaussian = true;
  bool count = true;
};

inline Schema random_schema(Rng& rng, const SchemaShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> ncols(shape.min_columns, shape.max_columns);
  std::vector<ColumnKind> kinds{ColumnKind::binary, ColumnKind::nominal};
  if (shape.gaussian) kinds.push_back(ColumnKind::gaussian);
  if (shape.count) kinds.push_back(ColumnKind::count);
  std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
  std::uniform_int_distribution<std::size_t> card(2, shape.max_cardinality);
  std::vector<ColumnSpec> cols;
  const std::size_t n = ncols(rng);
  for (std::size_t i = 0; i < n; ++i) {
    ColumnSpec c{"c" + std::to_string(i), kinds[pick(rng)], 0};
    if (c.kind == ColumnKind::nominal) c.cardinality = card(rng);
    cols.push_back(c);
  }
  return Schema(std::move(cols));
}

// Schema holding one column of every kind, in shuffled order, plus extras.
inline Schema all_kinds_schema(Rng& rng, std::size_t extra = 2) {
  std::vector<ColumnSpec> cols{{"b", ColumnKind::binary, 0},
                               {"g", ColumnKind::gaussian, 0},
                               {"n", ColumnKind::nominal, 3},
                               {"p", ColumnKind::count, 0}};
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, extra)(rng);
  if (n > 0) {
    const Schema more = random_schema(rng, {n, n, 5, true, true});
    for (std::size_t i = 0; i < more.size(); ++i) {
      auto c = more.column(i);
      c.name = "x" + std::to_string(i);
      cols.push_back(c);
    }
  }
  std::shuffle(cols.begin(), cols.end(), rng);
  return Schema(std::move(cols));
}

inline Model random_model(const Schema& schema, std::size_t hidden, Rng& rng, double scale = 1.0) {
  Model m(schema, hidden);
  std::normal_distribution<double> n(0.0, scale);
  for (double& v : m.params().all()) v = n(rng);
  return m;
}

inline double random_cell(const ColumnSpec& col, Rng& rng, int count_max = 8) {
  switch (col.kind) {
    case ColumnKind::binary: return static_cast<double>(std::uniform_int_distribution<int>(0, 1)(rng));
    case ColumnKind::gaussian: return std::normal_distribution<double>(0.0, 1.5)(rng);
    case ColumnKind::nominal:
      return static_cast<double>(std::uniform_int_distribution<std::size_t>(0, col.cardinality - 1)(rng));
    case ColumnKind::count: return static_cast<double>(std::uniform_int_distribution<int>(0, count_max)(rng));
  }
  return 0.0;
}

inline std::vector<double> random_record(const Schema& schema, Rng& rng, int count_max = 8) {
  std::vector<double> r(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) r[i] = random_cell(schema.column(i), rng, count_max);
  return r;
}

inline Dataset random_dataset(const Schema& schema, std::size_t rows, Rng& rng, int count_max = 8) {
  Dataset d(schema);
  for (std::size_t r = 0; r < rows; ++r) d.append(random_record(schema, rng, count_max));
  return d;
}

inline std::vector<Label> random_labels(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution b(p);
  std::vector<Label> out(n);
  for (auto& l : out) l = b(rng) ? Label::outlier : Label::inlier;
  return out;
}

}  // namespace mvrbm::testing
