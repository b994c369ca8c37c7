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
#include "mvrbm/model.hpp"

namespace mvrbm {

// Higher free energy means more outlying. A row is an outlier iff its score
// is >= threshold.
struct ScoreReport {
  std::vector<double> scores;
  double threshold = 0.0;
  std::vector<Label> verdicts;
  // Row indices by descending score, ties by ascending index.
  std::vector<std::size_t> ranking;

  std::size_t outlier_count() const noexcept;
};

// Nearest-rank upper percentile: beta is the m-th largest score with
// m = ceil(n * alpha / 100), so roughly alpha% of `scores` lie at or above it.
double threshold_from_percentile(std::span<const double> scores, double alpha);

// Verdicts and ranking for precomputed scores.
ScoreReport make_report(std::vector<double> scores, double threshold);

ScoreReport detect(const Model& model, const Dataset& data, double threshold);

// CSV: `row_index,free_energy,verdict` with verdict in {inlier, outlier}.
void write_score_report(std::ostream& out, const ScoreReport& report);
// Reads the free_energy column of a score CSV.
std::vector<double> load_scores(std::istream& in);

}  // namespace mvrbm
