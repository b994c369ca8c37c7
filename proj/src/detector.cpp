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

#include "mvrbm/detector.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "mvrbm/energy.hpp"
#include "mvrbm/error.hpp"

namespace mvrbm {

std::size_t ScoreReport::outlier_count() const noexcept {
  return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), Label::outlier));
}

double threshold_from_percentile(std::span<const double> scores, double alpha) {
  if (scores.empty()) throw DomainError("threshold needs at least one training score");
  if (!(alpha > 0.0 && alpha < 100.0)) throw DomainError("percentile must lie in (0,100)");
  const auto n = scores.size();
  // Guard the ceiling against representation error, e.g. 100 * 5 / 100.
  auto m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * alpha / 100.0 - 1e-9));
  m = std::clamp<std::size_t>(m, 1, n);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n - m), sorted.end());
  return sorted[n - m];
}

ScoreReport make_report(std::vector<double> scores, double threshold) {
  ScoreReport report;
  report.threshold = threshold;
  report.verdicts.reserve(scores.size());
  for (const double s : scores) report.verdicts.push_back(s >= threshold ? Label::outlier : Label::inlier);
  report.ranking.resize(scores.size());
  std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  report.scores = std::move(scores);
  return report;
}

ScoreReport detect(const Model& model, const Dataset& data, double threshold) {
  return make_report(free_energy_batch(model, data), threshold);
}

void write_score_report(std::ostream& out, const ScoreReport& report) {
  out << "row_index,free_energy,verdict\n";
  char buf[64];
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), report.scores[i]);
    out << i << ',' << std::string_view(buf, ptr - buf) << ','
        << (report.verdicts[i] == Label::outlier ? "outlier" : "inlier") << '\n';
  }
}

std::vector<double> load_scores(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("row_index,free_energy", 0) != 0)
    throw ParseError("score file must start with 'row_index,free_energy'", 1);
  std::vector<double> scores;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto c1 = line.find(',');
    if (c1 == std::string::npos) throw ParseError("expected row_index,free_energy", line_no);
    auto c2 = line.find(',', c1 + 1);
    if (c2 == std::string::npos) c2 = line.size();
    double v = 0.0;
    const char* first = line.data() + c1 + 1;
    const char* last = line.data() + c2;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw ParseError("bad free_energy value", line_no, 2);
    scores.push_back(v);
  }
  return scores;
}

}  // namespace mvrbm
