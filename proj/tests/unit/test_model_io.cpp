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


#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "generators.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/model_io.hpp"

using namespace mvrbm;

namespace {

std::string saved(const Model& m) {
  std::ostringstream out;
  save_model(m, out);
  return out.str();
}

Model loaded(const std::string& text) {
  std::istringstream in(text);
  return load_model(in);
}

bool bit_identical(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& with) {
  const auto at = text.find("\n" + prefix);
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at + 1);
  return text.substr(0, at + 1) + with + text.substr(end);
}

}  // namespace

TEST_CASE("hex float formatting round-trips every value") {
  const double values[] = {0.0,
                           -0.0,
                           1.0,
                           -3.0,
                           0.1,
                           std::numeric_limits<double>::min(),
                           std::numeric_limits<double>::denorm_min(),
                           std::numeric_limits<double>::max(),
                           -std::numeric_limits<double>::epsilon()};
  for (double v : values) {
    const double back = parse_hex(format_hex(v));
    CHECK(std::bit_cast<std::uint64_t>(back) == std::bit_cast<std::uint64_t>(v));
  }
  CHECK(format_hex(-3.0) == "-0x1.8p+1");
  CHECK_THROWS_AS(parse_hex("1.5"), ParseError);
  CHECK_THROWS_AS(parse_hex("0x1.8p+1junk"), ParseError);
}

TEST_CASE("save then load is bit-identical") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const Schema s = testing::all_kinds_schema(rng, 4);
    Model m = testing::random_model(s, 1 + t % 9, rng, t % 2 ? 1.0 : 1e-200);
    StandardizationStats stats;
    for (std::size_t c = 0; c < s.size(); ++c)
      if (s.column(c).kind == ColumnKind::gaussian) stats.columns.push_back({c, 0.1 * t, 1.0 / (1 + t)});
    m.set_standardization(stats);
    const Model back = loaded(saved(m));
    CHECK(back == m);
    CHECK(bit_identical(back.params().all(), m.params().all()));
    CHECK(saved(back) == saved(m));
  }
}

TEST_CASE("load_model rejects damaged files") {
  Rng rng(2);
  const Model m = testing::random_model(Schema({{"g", ColumnKind::gaussian, 0}, {"k", ColumnKind::nominal, 3}}), 2, rng);
  const std::string good = saved(m);

  SUBCASE("truncated") {
    for (std::size_t cut : {std::size_t{0}, std::size_t{5}, good.size() / 3, good.size() / 2, good.size() - 5})
      CHECK_THROWS_AS(loaded(good.substr(0, cut)), ParseError);
  }
  SUBCASE("version mismatch") { CHECK_THROWS_AS(loaded("mvrbm-model 2" + good.substr(good.find('\n'))), ParseError); }
  SUBCASE("wrong magic") { CHECK_THROWS_AS(loaded("other 1" + good.substr(good.find('\n'))), ParseError); }
  SUBCASE("zero hidden units") { CHECK_THROWS_AS(loaded(replace_line(good, "hidden", "hidden 0")), ParseError); }
  SUBCASE("hidden bias count inconsistent") {
    CHECK_THROWS_AS(loaded(replace_line(good, "hidden 2", "hidden 3")), ParseError);
  }
  SUBCASE("weights shape inconsistent") {
    CHECK_THROWS_AS(loaded(replace_line(good, "weights", "weights 3 2")), ParseError);
  }
  SUBCASE("non-hex value") {
    const auto at = good.find("visible_bias");
    const auto line = good.find('\n', at) + 1;
    CHECK_THROWS_AS(loaded(good.substr(0, line) + "1.0 2.0 3.0 4.0" + good.substr(good.find('\n', line))),
                    ParseError);
  }
}

TEST_CASE("model rejects non-finite parameters and K = 0") {
  CHECK_THROWS_AS(Model(Schema({{"b", ColumnKind::binary, 0}}), 0), DomainError);
  Model m(Schema({{"b", ColumnKind::binary, 0}}), 1);
  m.params().weight(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(m.params().all_finite());
  CHECK_THROWS_AS(m.validate(), DomainError);
}
