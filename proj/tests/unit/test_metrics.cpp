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
#include <sstream>

#include "generators.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/metrics.hpp"

using namespace mvrbm;

namespace {

constexpr Label O = Label::outlier;
constexpr Label I = Label::inlier;

double pairwise_auc(const std::vector<Label>& labels, const std::vector<double>& scores) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != O) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != I) continue;
      pairs += 1.0;
      wins += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

}  // namespace

TEST_CASE("f_score from confusion counts") {
  // TP=8, FP=2, FN=2, TN=5.
  std::vector<Label> labels, verdicts;
  for (int i = 0; i < 8; ++i) labels.push_back(O), verdicts.push_back(O);
  for (int i = 0; i < 2; ++i) labels.push_back(I), verdicts.push_back(O);
  for (int i = 0; i < 2; ++i) labels.push_back(O), verdicts.push_back(I);
  for (int i = 0; i < 5; ++i) labels.push_back(I), verdicts.push_back(I);
  const auto m = f_score(labels, verdicts);
  CHECK(m.true_positive == 8);
  CHECK(m.false_positive == 2);
  CHECK(m.false_negative == 2);
  CHECK(m.true_negative == 5);
  CHECK(m.precision == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(m.recall == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(m.f_score == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::isnan(m.auc));
}

TEST_CASE("f_score edge cases") {
  const std::vector<Label> labels{O, I, I, O};
  CHECK(f_score(labels, std::vector<Label>(4, I)).f_score == 0.0);
  const auto perfect = f_score(labels, labels);
  CHECK(perfect.f_score == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(f_score(std::vector<Label>(3, I), std::vector<Label>(3, I)).f_score == 0.0);
  CHECK_THROWS_AS(f_score(labels, std::vector<Label>(3, I)), ShapeError);
  CHECK_THROWS_AS(f_score(std::vector<Label>{}, std::vector<Label>{}), DomainError);
}

TEST_CASE("f_score matches hand arithmetic on random instances") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 100;
    const auto labels = testing::random_labels(n, 0.2, rng);
    const auto verdicts = testing::random_labels(n, 0.3, rng);
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      tp += labels[i] == O && verdicts[i] == O;
      fp += labels[i] == I && verdicts[i] == O;
      fn += labels[i] == O && verdicts[i] == I;
    }
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const auto m = f_score(labels, verdicts);
    CHECK(m.f_score == doctest::Approx(f).epsilon(1e-14));
    CHECK(m.f_score >= 0.0);
    CHECK(m.f_score <= 1.0);
    CHECK((m.f_score == 1.0) == (labels == verdicts && tp > 0));
  }
}

TEST_CASE("roc_auc fixed cases") {
  CHECK(roc_auc(std::vector<Label>{I, I, O, O}, std::vector<double>{1, 2, 3, 4}) == 1.0);
  CHECK(roc_auc(std::vector<Label>{I, I, O, O}, std::vector<double>{4, 3, 2, 1}) == 0.0);
  CHECK(roc_auc(std::vector<Label>{I, O, I, O}, std::vector<double>(4, 7.0)) == 0.5);
  CHECK(roc_auc(std::vector<Label>{I, O, I}, std::vector<double>{1, 2, 2}) == 0.75);
  CHECK_THROWS_AS(roc_auc(std::vector<Label>{I, I}, std::vector<double>{1, 2}), DomainError);
  CHECK_THROWS_AS(roc_auc(std::vector<Label>{O}, std::vector<double>{1}), DomainError);
  CHECK_THROWS_AS(roc_auc(std::vector<Label>{I, O}, std::vector<double>{1}), ShapeError);
}

TEST_CASE("roc_auc equals the pairwise count") {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 199;
    auto labels = testing::random_labels(n, 0.3, rng);
    labels[0] = O;
    labels[1] = I;
    std::vector<double> scores(n);
    std::uniform_int_distribution<int> coarse(0, 1 + t % 20);
    for (auto& s : scores) s = t % 2 ? coarse(rng) : std::normal_distribution<double>()(rng);
    CHECK(std::abs(roc_auc(labels, scores) - pairwise_auc(labels, scores)) < 1e-12);

    // Trapezoid area under roc_curve gives the same number.
    const auto curve = roc_curve(labels, scores);
    CHECK(curve.front() == std::pair<double, double>{0.0, 0.0});
    CHECK(curve.back() == std::pair<double, double>{1.0, 1.0});
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
      area += (curve[i].first - curve[i - 1].first) * (curve[i].second + curve[i - 1].second) / 2.0;
    CHECK(std::abs(area - pairwise_auc(labels, scores)) < 1e-12);
  }
}

TEST_CASE("metrics CSV") {
  MetricsReport m = f_score(std::vector<Label>{O, I}, std::vector<Label>{O, O});
  m.auc = 0.75;
  std::ostringstream out;
  write_metrics(out, m);
  CHECK(out.str() == "precision,recall,f_score,auc,tp,fp,tn,fn\n0.5,1,0.6666666666666666,0.75,1,1,0,0\n");
}
