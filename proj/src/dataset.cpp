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

#include "mvrbm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "mvrbm/error.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void format_double(std::ostream& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, ptr - buf);
}

}  // namespace

void Dataset::append(std::span<const double> values) {
  if (values.size() != cols()) throw ShapeError("record has wrong number of cells");
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (!schema_.column(c).admits(values[c]))
      throw DomainError("value " + std::to_string(values[c]) + " outside the domain of " +
                        std::string(to_string(schema_.column(c).kind)) + " column '" +
                        schema_.column(c).name + "'");
  }
  cells_.insert(cells_.end(), values.begin(), values.end());
}

void Dataset::set_labels(std::vector<Label> labels) {
  if (labels.size() != rows()) throw ShapeError("label count does not match row count");
  labels_ = std::move(labels);
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  Dataset out(schema_);
  out.cells_.reserve(indices.size() * cols());
  for (const auto r : indices) {
    if (r >= rows()) throw ShapeError("row index out of range");
    const auto src = row(r);
    out.cells_.insert(out.cells_.end(), src.begin(), src.end());
  }
  if (labels_) {
    std::vector<Label> labels;
    labels.reserve(indices.size());
    for (const auto r : indices) labels.push_back((*labels_)[r]);
    out.labels_ = std::move(labels);
  }
  return out;
}

void Dataset::validate() const {
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c)
      if (!schema_.column(c).admits(at(r, c)))
        throw DomainError("cell outside column domain at row " + std::to_string(r) + ", column '" +
                          schema_.column(c).name + "'");
}

Dataset load_csv(std::istream& in, const Schema& schema) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing header row", 1);
  ++line_no;
  const auto header = split_fields(line);
  if (header.size() != schema.size()) throw ParseError("header has wrong number of columns", 1);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != schema.column(c).name)
      throw ParseError("header name '" + std::string(header[c]) + "' does not match schema column '" +
                           schema.column(c).name + "'",
                       1, c + 1);

  Dataset data(schema);
  std::vector<double> values(schema.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < schema.size()) throw ParseError("missing cell", line_no, fields.size() + 1);
    if (fields.size() > schema.size()) throw ParseError("too many cells", line_no, schema.size() + 1);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty()) throw ParseError("missing cell", line_no, c + 1);
      if (!parse_double(fields[c], values[c]))
        throw ParseError("non-numeric cell '" + std::string(fields[c]) + "'", line_no, c + 1);
      const auto& col = schema.column(c);
      if (!col.admits(values[c]))
        throw ParseError("value '" + std::string(fields[c]) + "' outside the domain of " +
                             std::string(to_string(col.kind)) + " column '" + col.name + "'",
                         line_no, c + 1);
    }
    data.append(values);
  }
  return data;
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto& cols = data.schema().columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c].name;
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      format_double(out, row[c]);
    }
    out << '\n';
  }
}

std::vector<Label> load_labels(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing labels header", 1);
  const auto header = split_fields(line);
  if (header.size() != 2 || header[0] != "row_index" || header[1] != "is_outlier")
    throw ParseError("labels header must be 'row_index,is_outlier'", 1);
  std::vector<Label> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError("expected 2 cells", line_no);
    double index = 0.0, flag = 0.0;
    if (!parse_double(fields[0], index) || index != static_cast<double>(labels.size()))
      throw ParseError("row_index out of sequence", line_no, 1);
    if (!parse_double(fields[1], flag) || (flag != 0.0 && flag != 1.0))
      throw ParseError("is_outlier must be 0 or 1", line_no, 2);
    labels.push_back(flag == 1.0 ? Label::outlier : Label::inlier);
  }
  return labels;
}

void write_labels(std::ostream& out, std::span<const Label> labels) {
  out << "row_index,is_outlier\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << ',' << (labels[i] == Label::outlier ? 1 : 0) << '\n';
}

StandardizationStats fit_standardization(const Dataset& data) {
  if (data.empty()) throw DomainError("cannot fit standardization on an empty dataset");
  StandardizationStats stats;
  const auto n = static_cast<double>(data.rows());
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (data.schema().column(c).kind != ColumnKind::gaussian) continue;
    double mean = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) mean += data.at(r, c);
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
      const double d = data.at(r, c) - mean;
      var += d * d;
    }
    var /= n;
    if (!(var > 0.0))
      throw DomainError("gaussian column '" + data.schema().column(c).name + "' has zero variance");
    stats.columns.push_back({c, mean, std::sqrt(var)});
  }
  return stats;
}

namespace {

void check_stats(const Dataset& data, const StandardizationStats& stats) {
  std::size_t expected = 0;
  for (const auto& col : data.schema().columns()) expected += col.kind == ColumnKind::gaussian;
  if (stats.columns.size() != expected) throw ShapeError("standardization stats do not match schema");
  for (const auto& s : stats.columns)
    if (s.column >= data.cols() || data.schema().column(s.column).kind != ColumnKind::gaussian || !(s.sd > 0.0))
      throw ShapeError("standardization stats do not match schema");
}

}  // namespace

Dataset apply_standardization(const Dataset& data, const StandardizationStats& stats) {
  check_stats(data, stats);
  Dataset out = data;
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (const auto& s : stats.columns) out.at(r, s.column) = (out.at(r, s.column) - s.mean) / s.sd;
  return out;
}

Dataset invert_standardization(const Dataset& data, const StandardizationStats& stats) {
  check_stats(data, stats);
  Dataset out = data;
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (const auto& s : stats.columns) out.at(r, s.column) = out.at(r, s.column) * s.sd + s.mean;
  return out;
}

void encode_record(std::span<const double> row, const Schema& schema, std::span<double> out) {
  if (row.size() != schema.size() || out.size() != schema.encoded_width())
    throw ShapeError("encode_record: size mismatch");
  std::size_t slot = 0;
  for (std::size_t c = 0; c < row.size(); ++c) {
    const auto& col = schema.column(c);
    if (!col.admits(row[c])) throw DomainError("cell outside domain of column '" + col.name + "'");
    if (col.kind == ColumnKind::nominal) {
      std::fill_n(out.begin() + slot, col.cardinality, 0.0);
      out[slot + static_cast<std::size_t>(row[c])] = 1.0;
      slot += col.cardinality;
    } else {
      out[slot++] = row[c];
    }
  }
}

std::vector<double> encode_record(std::span<const double> row, const Schema& schema) {
  std::vector<double> out(schema.encoded_width());
  encode_record(row, schema, out);
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw DomainError("test fraction must lie in (0,1)");
  if (n == 0) throw DomainError("cannot split an empty dataset");
  // The epsilon absorbs representation error, e.g. 3000 * (1 - 0.3) = 2100.0000000000005.
  auto train_n = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * (1.0 - test_fraction) - 1e-9));
  train_n = std::min(train_n, n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(train_n));
  std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(train_n), perm.end());
  return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  const auto [train, test] = split_indices(data.rows(), test_fraction, seed);
  return {data.select(train), data.select(test)};
}

}  // namespace mvrbm
