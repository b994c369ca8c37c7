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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvrbm/schema.hpp"

namespace mvrbm {

enum class Label : std::uint8_t { inlier = 0, outlier = 1 };

// Column-typed record matrix. Cells are stored row-major as doubles; binary,
// nominal and count cells hold exact small integers.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Schema schema) : schema_(std::move(schema)) {}

  const Schema& schema() const noexcept { return schema_; }
  std::size_t rows() const noexcept { return schema_.size() == 0 ? 0 : cells_.size() / schema_.size(); }
  std::size_t cols() const noexcept { return schema_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  std::span<const double> row(std::size_t r) const {
    return {cells_.data() + r * cols(), cols()};
  }
  std::span<double> row(std::size_t r) { return {cells_.data() + r * cols(), cols()}; }
  double at(std::size_t r, std::size_t c) const { return cells_.at(r * cols() + c); }
  double& at(std::size_t r, std::size_t c) { return cells_.at(r * cols() + c); }

  // Appends a row after validating every cell; throws DomainError naming the column.
  void append(std::span<const double> values);

  const std::optional<std::vector<Label>>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<Label> labels);
  void clear_labels() noexcept { labels_.reset(); }

  // Rows in the given order (indices may repeat). Labels follow their rows.
  Dataset select(std::span<const std::size_t> indices) const;

  // Checks every cell against its column domain.
  void validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Schema schema_;
  std::vector<double> cells_;
  std::optional<std::vector<Label>> labels_;
};

// Reads a header row (names must match the schema in order) followed by one
// comma-separated record per line. Errors carry 1-based line/column positions.
Dataset load_csv(std::istream& in, const Schema& schema);

// Writes the header and every row; numeric text round-trips exactly.
void write_csv(std::ostream& out, const Dataset& data);

// Labels CSV: header `row_index,is_outlier`, then one `i,0|1` line per row.
std::vector<Label> load_labels(std::istream& in);
void write_labels(std::ostream& out, std::span<const Label> labels);

struct ColumnStats {
  std::size_t column = 0;
  double mean = 0.0;
  double sd = 1.0;

  friend bool operator==(const ColumnStats&, const ColumnStats&) = default;
};

// Per-gaussian-column location and scale. Count columns are never standardized.
struct StandardizationStats {
  std::vector<ColumnStats> columns;

  bool empty() const noexcept { return columns.empty(); }
  friend bool operator==(const StandardizationStats&, const StandardizationStats&) = default;
};

// Population (1/n) mean and standard deviation of every gaussian column.
StandardizationStats fit_standardization(const Dataset& data);
Dataset apply_standardization(const Dataset& data, const StandardizationStats& stats);
Dataset invert_standardization(const Dataset& data, const StandardizationStats& stats);

// Writes the encoded form of `row` into `out` (size schema.encoded_width()).
// Nominal value c of a C-way column becomes C slots with a single 1 at c.
void encode_record(std::span<const double> row, const Schema& schema, std::span<double> out);
std::vector<double> encode_record(std::span<const double> row, const Schema& schema);

// Random disjoint partition: train gets ceil(n*(1-test_fraction)) rows.
std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction, std::uint64_t seed);

// The row indices split() assigns to (train, test), in output order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed);

}  // namespace mvrbm
