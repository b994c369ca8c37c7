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

#include "mvrbm/schema.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "mvrbm/error.hpp"

namespace mvrbm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::string_view to_string(ColumnKind kind) noexcept {
  switch (kind) {
    case ColumnKind::binary: return "binary";
    case ColumnKind::gaussian: return "gaussian";
    case ColumnKind::nominal: return "nominal";
    case ColumnKind::count: return "count";
  }
  return "?";
}

bool ColumnSpec::admits(double value) const noexcept {
  switch (kind) {
    case ColumnKind::binary: return value == 0.0 || value == 1.0;
    case ColumnKind::gaussian: return std::isfinite(value);
    case ColumnKind::nominal:
      return is_integer(value) && value >= 0.0 && value < static_cast<double>(cardinality);
    case ColumnKind::count: return is_integer(value) && value >= 0.0;
  }
  return false;
}

Schema::Schema(std::vector<ColumnSpec> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw DomainError("schema must have at least one column");
  std::set<std::string> names;
  offsets_.reserve(columns_.size());
  for (const auto& col : columns_) {
    if (col.name.empty()) throw DomainError("schema column with empty name");
    if (!names.insert(col.name).second) throw DomainError("duplicate column name '" + col.name + "'");
    if (col.kind == ColumnKind::nominal && col.cardinality < 2)
      throw DomainError("nominal column '" + col.name + "' needs cardinality >= 2");
    if (col.kind != ColumnKind::nominal && col.cardinality != 0)
      throw DomainError("column '" + col.name + "' is not nominal but has a cardinality");
    offsets_.push_back(width_);
    width_ += col.width();
  }
}

std::size_t Schema::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  return columns_.size();
}

bool Schema::all_discrete() const noexcept {
  for (const auto& c : columns_)
    if (c.kind == ColumnKind::gaussian) return false;
  return true;
}

Schema parse_schema(std::string_view text) {
  std::vector<ColumnSpec> columns;
  std::set<std::string> names;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'name:kind'", line_no);
    ColumnSpec col;
    col.name = std::string(trim(line.substr(0, colon)));
    if (col.name.empty()) throw ParseError("empty column name", line_no);
    std::string_view rest = trim(line.substr(colon + 1));
    std::string_view kind = rest;
    std::string_view card;
    if (const auto comma = rest.find(','); comma != std::string_view::npos) {
      kind = trim(rest.substr(0, comma));
      card = trim(rest.substr(comma + 1));
    }
    if (kind == "binary") col.kind = ColumnKind::binary;
    else if (kind == "gaussian") col.kind = ColumnKind::gaussian;
    else if (kind == "nominal") col.kind = ColumnKind::nominal;
    else if (kind == "count") col.kind = ColumnKind::count;
    else throw ParseError("unknown column kind '" + std::string(kind) + "'", line_no);

    if (col.kind == ColumnKind::nominal) {
      if (card.empty()) throw ParseError("nominal column '" + col.name + "' needs a cardinality", line_no);
      const auto [ptr, ec] = std::from_chars(card.data(), card.data() + card.size(), col.cardinality);
      if (ec != std::errc{} || ptr != card.data() + card.size() || col.cardinality < 2)
        throw ParseError("nominal cardinality must be an integer >= 2", line_no);
    } else if (!card.empty()) {
      throw ParseError("only nominal columns take a cardinality", line_no);
    }
    if (!names.insert(col.name).second)
      throw ParseError("duplicate column name '" + col.name + "'", line_no);
    columns.push_back(std::move(col));
  }
  if (columns.empty()) throw ParseError("schema is empty");
  return Schema(std::move(columns));
}

std::string format_schema(const Schema& schema) {
  std::ostringstream out;
  for (const auto& col : schema.columns()) {
    out << col.name << ':' << to_string(col.kind);
    if (col.kind == ColumnKind::nominal) out << ',' << col.cardinality;
    out << '\n';
  }
  return out.str();
}

}  // namespace mvrbm
