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

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "mvrbm/dataset.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/schema.hpp"

using namespace mvrbm;

namespace {

Dataset from_text(const std::string& text, const Schema& schema) {
  std::istringstream in(text);
  return load_csv(in, schema);
}

Dataset gaussian_column(std::initializer_list<double> values) {
  Dataset d(Schema({{"x", ColumnKind::gaussian, 0}}));
  for (double v : values) d.append(std::vector<double>{v});
  return d;
}

}  // namespace

TEST_CASE("parse_schema reads columns in file order") {
  const Schema s = parse_schema("age:gaussian\nsex:binary");
  REQUIRE(s.size() == 2);
  CHECK(s.encoded_width() == 2);
  CHECK(s.column(0).name == "age");
  CHECK(s.column(0).kind == ColumnKind::gaussian);
  CHECK(s.column(1).kind == ColumnKind::binary);
}

TEST_CASE("nominal column widens to its cardinality") {
  const Schema s = parse_schema("job:nominal,11");
  CHECK(s.size() == 1);
  CHECK(s.encoded_width() == 11);
}

TEST_CASE("parse_schema skips comments and blank lines") {
  const Schema s = parse_schema("# header\n\nn:count\n  \nk:nominal,3\n");
  CHECK(s.size() == 2);
  CHECK(s.encoded_width() == 4);
  CHECK(s.offset(1) == 1);
}

TEST_CASE("parse_schema rejects bad input") {
  CHECK_THROWS_AS(parse_schema("x:rank"), ParseError);
  CHECK_THROWS_AS(parse_schema("a:binary\na:gaussian"), ParseError);
  CHECK_THROWS_AS(parse_schema("k:nominal"), ParseError);
  CHECK_THROWS_AS(parse_schema("k:nominal,1"), ParseError);
  CHECK_THROWS_AS(parse_schema("k:binary,3"), ParseError);
  CHECK_THROWS_AS(parse_schema(""), ParseError);
  CHECK_THROWS_AS(parse_schema("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_schema("nocolon"), ParseError);
}

TEST_CASE("parse_schema error names the line") {
  try {
    parse_schema("a:binary\nb:gaussian\nc:weird");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("format_schema round-trips") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Schema s = testing::random_schema(rng, {1, 6, 7, true, true});
    CHECK(parse_schema(format_schema(s)) == s);
  }
}

TEST_CASE("load_csv reads a header and rows") {
  const Schema s = parse_schema("a:binary\nb:gaussian\nc:nominal,3\nd:count");
  const Dataset d = from_text("a,b,c,d\n1,-0.5,2,4\n0,3.25,0,0\n", s);
  REQUIRE(d.rows() == 2);
  CHECK(d.at(0, 1) == -0.5);
  CHECK(d.at(1, 1) == 3.25);
  CHECK(d.at(0, 2) == 2.0);
  CHECK_FALSE(d.labels().has_value());
}

TEST_CASE("load_csv reports domain violations with location") {
  const Schema s = parse_schema("a:binary\nb:gaussian");
  try {
    from_text("a,b\n0,1\n2,1\n", s);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("column 1") != std::string::npos);
  }
}

TEST_CASE("load_csv rejects malformed input") {
  const Schema s = parse_schema("a:binary\nn:count\nk:nominal,3");
  CHECK_THROWS_AS(from_text("a,n\n0,1\n", s), ParseError);            // header short
  CHECK_THROWS_AS(from_text("a,k,n\n0,1,1\n", s), ParseError);        // header order
  CHECK_THROWS_AS(from_text("a,n,k\n0,-1,0\n", s), ParseError);       // count < 0
  CHECK_THROWS_AS(from_text("a,n,k\n0,1.5,0\n", s), ParseError);      // count not integral
  CHECK_THROWS_AS(from_text("a,n,k\n0,1,3\n", s), ParseError);        // nominal >= C
  CHECK_THROWS_AS(from_text("a,n,k\n0,1\n", s), ParseError);          // missing cell
  CHECK_THROWS_AS(from_text("a,n,k\n0,1,,\n", s), ParseError);        // extra / empty cell
  CHECK_THROWS_AS(from_text("a,n,k\n0,x,1\n", s), ParseError);        // non-numeric
  CHECK_THROWS_AS(from_text("", s), ParseError);                      // no header
  const Schema g = parse_schema("g:gaussian");
  CHECK_THROWS_AS(from_text("g\nnan\n", g), ParseError);
  CHECK_THROWS_AS(from_text("g\ninf\n", g), ParseError);
}

TEST_CASE("write_csv then load_csv is the identity") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Schema s = testing::random_schema(rng, {1, 5, 5, true, true});
    const Dataset d = testing::random_dataset(s, t % 7, rng, 1000);
    std::ostringstream out;
    write_csv(out, d);
    CHECK(from_text(out.str(), s) == d);
  }
}

TEST_CASE("labels round-trip") {
  Rng rng(6);
  const auto labels = testing::random_labels(37, 0.3, rng);
  std::ostringstream out;
  write_labels(out, labels);
  std::istringstream in(out.str());
  CHECK(load_labels(in) == labels);
  std::istringstream bad("row_index,is_outlier\n0,2\n");
  CHECK_THROWS_AS(load_labels(bad), ParseError);
}

TEST_CASE("fit_standardization uses the population formula") {
  const auto stats = fit_standardization(gaussian_column({1, 2, 3}));
  REQUIRE(stats.columns.size() == 1);
  CHECK(stats.columns[0].mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(stats.columns[0].sd == doctest::Approx(0.81649658092772603).epsilon(1e-15));  // sqrt(2/3)
}

TEST_CASE("fit_standardization error and empty cases") {
  CHECK_THROWS_AS(fit_standardization(gaussian_column({5, 5})), DomainError);
  CHECK_THROWS(fit_standardization(gaussian_column({})));
  Dataset bin(parse_schema("a:binary\nb:binary"));
  bin.append(std::vector<double>{0, 1});
  CHECK(fit_standardization(bin).columns.empty());
}

TEST_CASE("counts are left unstandardized") {
  Dataset d(parse_schema("n:count\ng:gaussian"));
  d.append(std::vector<double>{3, 1});
  d.append(std::vector<double>{5, 2});
  const auto stats = fit_standardization(d);
  REQUIRE(stats.columns.size() == 1);
  CHECK(stats.columns[0].column == 1);
  const Dataset z = apply_standardization(d, stats);
  CHECK(z.at(0, 0) == 3.0);
  CHECK(z.at(1, 0) == 5.0);
  CHECK(z.at(0, 1) == -1.0);
}

TEST_CASE("apply_standardization maps the mean to zero") {
  StandardizationStats stats{{{0, 2.0, 1.0}}};
  const Dataset z = apply_standardization(gaussian_column({2}), stats);
  CHECK(z.at(0, 0) == 0.0);
}

TEST_CASE("train-fitted stats leave test means off zero") {
  const auto stats = fit_standardization(gaussian_column({0, 1, 2}));
  const Dataset z = apply_standardization(gaussian_column({5, 6}), stats);
  CHECK(z.at(0, 0) + z.at(1, 0) > 1.0);
}

TEST_CASE("apply_standardization rejects stats from another schema") {
  StandardizationStats stats{{{1, 0.0, 1.0}}};
  CHECK_THROWS_AS(apply_standardization(gaussian_column({1}), stats), ShapeError);
  StandardizationStats wrong_kind{{{0, 0.0, 1.0}}};
  Dataset b(parse_schema("b:binary"));
  b.append(std::vector<double>{1});
  CHECK_THROWS_AS(apply_standardization(b, wrong_kind), ShapeError);
}

TEST_CASE("standardization properties on random data") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const Schema s = testing::random_schema(rng, {1, 5, 4, true, true});
    const Dataset d = testing::random_dataset(s, 20 + t, rng);
    StandardizationStats stats;
    try {
      stats = fit_standardization(d);
    } catch (const DomainError&) {
      continue;
    }
    const Dataset z = apply_standardization(d, stats);
    for (const auto& c : stats.columns) {
      double m = 0.0, v = 0.0;
      for (std::size_t r = 0; r < z.rows(); ++r) m += z.at(r, c.column);
      m /= static_cast<double>(z.rows());
      for (std::size_t r = 0; r < z.rows(); ++r) v += (z.at(r, c.column) - m) * (z.at(r, c.column) - m);
      v /= static_cast<double>(z.rows());
      CHECK(std::abs(m) < 1e-9);
      CHECK(std::abs(v - 1.0) < 1e-9);
    }
    const Dataset back = invert_standardization(z, stats);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) CHECK(std::abs(back.at(r, c) - d.at(r, c)) < 1e-12);
  }
}

TEST_CASE("encode_record one-of-K layout") {
  const Schema s = parse_schema("k:nominal,3");
  CHECK(encode_record(std::vector<double>{0}, s) == std::vector<double>{1, 0, 0});
  CHECK(encode_record(std::vector<double>{1}, s) == std::vector<double>{0, 1, 0});
  const Schema bg = parse_schema("b:binary\ng:gaussian");
  CHECK(encode_record(std::vector<double>{1, -0.5}, bg) == std::vector<double>{1, -0.5});
}

TEST_CASE("encode_record emits exactly one 1 per nominal column") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const Schema s = testing::random_schema(rng, {1, 6, 6, true, true});
    const auto rec = testing::random_record(s, rng);
    const auto enc = encode_record(rec, s);
    REQUIRE(enc.size() == s.encoded_width());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& col = s.column(i);
      if (col.kind != ColumnKind::nominal) {
        CHECK(enc[s.offset(i)] == rec[i]);
        continue;
      }
      double ones = 0.0;
      for (std::size_t c = 0; c < col.cardinality; ++c) ones += enc[s.offset(i) + c];
      CHECK(ones == 1.0);
      CHECK(enc[s.offset(i) + static_cast<std::size_t>(rec[i])] == 1.0);
    }
  }
}

TEST_CASE("split sizes and determinism") {
  Rng rng(1);
  const Schema s = parse_schema("g:gaussian");
  const Dataset d = testing::random_dataset(s, 3000, rng);
  const auto [train, test] = split(d, 0.3, 42);
  CHECK(train.rows() == 2100);
  CHECK(test.rows() == 900);
  const auto a = split_indices(3000, 0.3, 42);
  const auto b = split_indices(3000, 0.3, 42);
  CHECK(a == b);
  CHECK(split_indices(3000, 0.3, 43) != a);
  CHECK_THROWS_AS(split(d, 0.0, 1), DomainError);
  CHECK_THROWS_AS(split(d, 1.0, 1), DomainError);
  CHECK_THROWS_AS(split(Dataset(s), 0.3, 1), DomainError);
}

TEST_CASE("split is a partition") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 300;
    const double f = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    const auto [tr, te] = split_indices(n, f, rng());
    CHECK(tr.size() == static_cast<std::size_t>(std::ceil(static_cast<double>(n) * (1.0 - f) - 1e-9)));
    std::set<std::size_t> all(tr.begin(), tr.end());
    all.insert(te.begin(), te.end());
    CHECK(all.size() == n);
    CHECK(tr.size() + te.size() == n);
    CHECK(*all.rbegin() == n - 1);
  }
}

TEST_CASE("select keeps labels with rows") {
  Dataset d = gaussian_column({1, 2, 3});
  d.set_labels({Label::inlier, Label::outlier, Label::inlier});
  const std::vector<std::size_t> idx{2, 1};
  const Dataset s = d.select(idx);
  CHECK(s.at(0, 0) == 3.0);
  CHECK((*s.labels())[1] == Label::outlier);
  CHECK_THROWS_AS(d.set_labels({Label::inlier}), ShapeError);
}
