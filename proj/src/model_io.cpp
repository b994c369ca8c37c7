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

#include "mvrbm/model_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mvrbm/error.hpp"

namespace mvrbm {

namespace {

constexpr std::string_view kMagic = "mvrbm-model";

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(std::string("model file truncated: expected ") + what, line_ + 1);
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::size_t parse_count(const std::string& token, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) throw ParseError("expected a count", line);
  return v;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::size_t expect_header(LineReader& reader, const std::string& key, std::size_t arity_check = 1) {
  const auto t = tokens(reader.next(key.c_str()));
  if (t.size() != 1 + arity_check || t[0] != key) throw ParseError("expected '" + key + "'", reader.line());
  return parse_count(t[1], reader.line());
}

void read_values(LineReader& reader, std::span<double> dest, const char* what) {
  const auto t = tokens(reader.next(what));
  if (t.size() != dest.size()) throw ParseError(std::string("wrong number of values in ") + what, reader.line());
  for (std::size_t i = 0; i < t.size(); ++i) {
    try {
      dest[i] = parse_hex(t[i]);
    } catch (const ParseError&) {
      throw ParseError(std::string("bad number in ") + what, reader.line(), i + 1);
    }
  }
}

void write_values(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << format_hex(values[i]);
  out << '\n';
}

}  // namespace

std::string format_hex(double value) {
  char buf[64];
  std::size_t n = 0;
  if (std::signbit(value)) buf[n++] = '-';
  buf[n++] = '0';
  buf[n++] = 'x';
  const auto [ptr, ec] = std::to_chars(buf + n, buf + sizeof(buf), std::abs(value), std::chars_format::hex);
  return std::string(buf, ptr);
}

double parse_hex(const std::string& text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
    throw ParseError("expected a hex float, got '" + text + "'");
  s.remove_prefix(2);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::hex);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(value))
    throw ParseError("invalid number '" + text + "'");
  return negative ? -value : value;
}

void save_model(const Model& model, std::ostream& out) {
  model.validate();
  out << kMagic << ' ' << kModelFormatVersion << '\n';
  out << "hidden " << model.hidden() << '\n';
  out << "columns " << model.schema().size() << '\n';
  out << format_schema(model.schema());
  const auto& stats = model.standardization().columns;
  out << "standardization " << stats.size() << '\n';
  for (const auto& s : stats) out << s.column << ' ' << format_hex(s.mean) << ' ' << format_hex(s.sd) << '\n';
  const auto& p = model.params();
  out << "visible_bias " << model.width() << '\n';
  write_values(out, p.visible_bias());
  out << "hidden_bias " << model.hidden() << '\n';
  write_values(out, p.hidden_bias());
  out << "weights " << model.width() << ' ' << model.hidden() << '\n';
  for (std::size_t j = 0; j < model.width(); ++j) write_values(out, p.weight_row(j));
  out << "end\n";
}

Model load_model(std::istream& in) {
  LineReader reader(in);
  const auto magic = tokens(reader.next("format header"));
  if (magic.size() != 2 || magic[0] != kMagic) throw ParseError("not an mvrbm model file", 1);
  if (magic[1] != std::to_string(kModelFormatVersion))
    throw ParseError("unsupported model format version " + magic[1] + " (expected " +
                         std::to_string(kModelFormatVersion) + ")",
                     1);

  const std::size_t hidden = expect_header(reader, "hidden");
  if (hidden == 0) throw ParseError("model must have K >= 1 hidden units", reader.line());
  const std::size_t ncols = expect_header(reader, "columns");
  std::string schema_text;
  for (std::size_t i = 0; i < ncols; ++i) schema_text += reader.next("schema column") + '\n';
  Schema schema;
  try {
    schema = parse_schema(schema_text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad schema in model file: ") + e.what(), reader.line());
  }
  if (schema.size() != ncols) throw ParseError("schema column count mismatch", reader.line());

  StandardizationStats stats;
  const std::size_t nstats = expect_header(reader, "standardization");
  for (std::size_t i = 0; i < nstats; ++i) {
    const auto t = tokens(reader.next("standardization entry"));
    if (t.size() != 3) throw ParseError("standardization entry needs 3 fields", reader.line());
    ColumnStats s;
    s.column = parse_count(t[0], reader.line());
    s.mean = parse_hex(t[1]);
    s.sd = parse_hex(t[2]);
    if (s.column >= schema.size() || schema.column(s.column).kind != ColumnKind::gaussian || !(s.sd > 0.0))
      throw ParseError("standardization entry inconsistent with schema", reader.line());
    stats.columns.push_back(s);
  }

  Model model(schema, hidden);
  model.set_standardization(std::move(stats));
  auto& p = model.params();
  if (expect_header(reader, "visible_bias") != model.width())
    throw ParseError("visible_bias size does not match schema width", reader.line());
  read_values(reader, p.visible_bias(), "visible_bias");
  if (expect_header(reader, "hidden_bias") != hidden)
    throw ParseError("hidden_bias size does not match K", reader.line());
  read_values(reader, p.hidden_bias(), "hidden_bias");
  const auto wt = tokens(reader.next("weights"));
  if (wt.size() != 3 || wt[0] != "weights" || parse_count(wt[1], reader.line()) != model.width() ||
      parse_count(wt[2], reader.line()) != hidden)
    throw ParseError("weights shape does not match model", reader.line());
  for (std::size_t j = 0; j < model.width(); ++j) read_values(reader, p.weight_row(j), "weights");
  if (reader.next("end") != "end") throw ParseError("expected 'end'", reader.line());
  return model;
}

}  // namespace mvrbm
