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

#include "mvrbm/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "mvrbm/error.hpp"

namespace mvrbm {

namespace {

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

MetricsReport::MetricsReport() : auc(std::numeric_limits<double>::quiet_NaN()) {}

MetricsReport f_score(std::span<const Label> labels, std::span<const Label> verdicts) {
  if (labels.size() != verdicts.size()) throw ShapeError("labels and verdicts differ in length");
  if (labels.empty()) throw DomainError("f_score of empty input");
  MetricsReport m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool truth = labels[i] == Label::outlier;
    const bool flagged = verdicts[i] == Label::outlier;
    if (truth && flagged) ++m.true_positive;
    else if (!truth && flagged) ++m.false_positive;
    else if (truth) ++m.false_negative;
    else ++m.true_negative;
  }
  const auto tp = static_cast<double>(m.true_positive);
  const std::size_t flagged = m.true_positive + m.false_positive;
  const std::size_t positives = m.true_positive + m.false_negative;
  m.precision = flagged == 0 ? 0.0 : tp / static_cast<double>(flagged);
  m.recall = positives == 0 ? 0.0 : tp / static_cast<double>(positives);
  const double sum = m.precision + m.recall;
  m.f_score = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

double roc_auc(std::span<const Label> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ShapeError("labels and scores differ in length");
  const auto n = labels.size();
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::outlier));
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw DomainError("roc_auc needs both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of midranks (1-based) of positive rows.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t)
      if (labels[order[t]] == Label::outlier) rank_sum += midrank;
    i = j;
  }
  const auto p = static_cast<double>(positives);
  const auto q = static_cast<double>(negatives);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

std::vector<std::pair<double, double>> roc_curve(std::span<const Label> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ShapeError("labels and scores differ in length");
  const auto n = labels.size();
  const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), Label::outlier));
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0 || negatives == 0) throw DomainError("roc_curve needs both classes");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::pair<double, double>> curve{{0.0, 0.0}};
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    for (; j < n && scores[order[j]] == scores[order[i]]; ++j) (labels[order[j]] == Label::outlier ? tp : fp) += 1.0;
    curve.emplace_back(fp / negatives, tp / positives);
    i = j;
  }
  return curve;
}

void write_metrics(std::ostream& out, const MetricsReport& m) {
  out << "precision,recall,f_score,auc,tp,fp,tn,fn\n"
      << shortest(m.precision) << ',' << shortest(m.recall) << ',' << shortest(m.f_score) << ',' << shortest(m.auc)
      << ',' << m.true_positive << ',' << m.false_positive << ',' << m.true_negative << ',' << m.false_negative
      << '\n';
}

}  // namespace mvrbm
