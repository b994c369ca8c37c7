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
#include <iosfwd>
#include <span>
#include <vector>

#include "mvrbm/dataset.hpp"

namespace mvrbm {

// Outlier is the positive class.
struct MetricsReport {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;
  double precision = 0.0;
  double recall = 0.0;
  // 2PR / (P + R), or 0 when P + R = 0.
  double f_score = 0.0;
  // Filled by callers that also have scores; NaN otherwise.
  double auc;

  MetricsReport();
};

MetricsReport f_score(std::span<const Label> labels, std::span<const Label> verdicts);

// P(score_outlier > score_inlier) + 0.5 P(equal), via midranks. O(n log n).
double roc_auc(std::span<const Label> labels, std::span<const double> scores);

// (false positive rate, true positive rate) points from the highest threshold
// down, starting at (0,0) and ending at (1,1).
std::vector<std::pair<double, double>> roc_curve(std::span<const Label> labels, std::span<const double> scores);

// CSV with one header and one value row:
// precision,recall,f_score,auc,tp,fp,tn,fn
void write_metrics(std::ostream& out, const MetricsReport& m);

}  // namespace mvrbm
