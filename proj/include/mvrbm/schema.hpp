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
#include <string>
#include <string_view>
#include <vector>

namespace mvrbm {

enum class ColumnKind { binary, gaussian, nominal, count };

std::string_view to_string(ColumnKind kind) noexcept;

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::gaussian;
  // Number of categories; meaningful only for nominal columns (>= 2), 0 otherwise.
  std::size_t cardinality = 0;

  // Number of encoded slots this column occupies.
  std::size_t width() const noexcept { return kind == ColumnKind::nominal ? cardinality : 1; }

  // True if `value` lies in the cell domain of this column.
  bool admits(double value) const noexcept;

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// Ordered, validated list of typed columns. Encoded offsets are precomputed so
// that column i occupies slots [offset(i), offset(i) + columns()[i].width()).
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<ColumnSpec> columns);

  const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }
  const ColumnSpec& column(std::size_t i) const { return columns_.at(i); }
  std::size_t size() const noexcept { return columns_.size(); }
  std::size_t encoded_width() const noexcept { return width_; }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }

  // Index of the column with the given name, or size() when absent.
  std::size_t find(std::string_view name) const noexcept;

  bool all_discrete() const noexcept;

  friend bool operator==(const Schema& a, const Schema& b) { return a.columns_ == b.columns_; }

 private:
  std::vector<ColumnSpec> columns_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
};

// Parses one `name:kind[,cardinality]` entry per line. Blank lines and lines
// starting with '#' are ignored.
Schema parse_schema(std::string_view text);

// Inverse of parse_schema; the output parses back to an equal Schema.
std::string format_schema(const Schema& schema);

}  // namespace mvrbm
