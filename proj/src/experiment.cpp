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

#include "mvrbm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mvrbm/atomic_file.hpp"
#include "mvrbm/error.hpp"
#include "mvrbm/model_io.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

MetricsReport evaluate(std::span<const Label> labels, const ScoreReport& report) {
  MetricsReport m = f_score(labels, report.verdicts);
  const auto outliers = std::count(labels.begin(), labels.end(), Label::outlier);
  if (outliers > 0 && static_cast<std::size_t>(outliers) < labels.size()) m.auc = roc_auc(labels, report.scores);
  return m;
}

}  // namespace

ExperimentResult run_experiment(const Dataset& data, const ExperimentConfig& config) {
  if (data.empty()) throw DomainError("experiment needs data");
  Dataset labeled;
  if (config.contaminate) {
    ContaminationConfig cc = config.contamination;
    cc.seed = derive_seed(config.seed, Stage::contaminate);
    labeled = contaminate(data, cc);
  } else {
    if (!data.labels()) throw DomainError("experiment data has no labels and contamination is off");
    labeled = data;
  }

  auto [train_raw, test_raw] = split(labeled, config.test_fraction, derive_seed(config.seed, Stage::split));
  const auto stats = fit_standardization(train_raw);
  const Dataset train_set = apply_standardization(train_raw, stats);
  const Dataset test_set = apply_standardization(test_raw, stats);

  TrainingConfig tc = config.training;
  tc.seed = derive_seed(config.seed, Stage::train);
  auto trained = train(train_set, tc, &test_set);
  trained.model.set_standardization(stats);

  ExperimentResult result{std::move(trained.model), std::move(trained.report), {}, {}, {}, {}, {}, {}};
  const auto train_scores = free_energy_batch(result.model, train_set);
  const double beta = threshold_from_percentile(train_scores, config.alpha);
  result.train_scores = make_report(train_scores, beta);
  result.test_scores = detect(result.model, test_set, beta);
  result.train_labels = *train_set.labels();
  result.test_labels = *test_set.labels();
  result.train_metrics = evaluate(result.train_labels, result.train_scores);
  result.test_metrics = evaluate(result.test_labels, result.test_scores);
  return result;
}

ExperimentSpec ExperimentSpec::from_config(const KeyValueConfig& cfg) {
  static constexpr std::string_view kKeys[] = {
      "source",          "data",           "schema",       "labels",
      "output_dir",      "synth_components", "synth_samples", "synth_outlier_fraction",
      "synth_noise_scale", "seed",          "contaminate",  "contamination_fraction",
      "shift_low",       "shift_high",     "test_fraction", "alpha",
  };
  const auto training = training_config_keys();
  for (const auto& [key, value] : cfg.values())
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys) &&
        std::find(training.begin(), training.end(), key) == training.end())
      throw ParseError("unknown experiment key '" + key + "'");

  ExperimentSpec spec;
  spec.source = cfg.get_string("source", "file");
  if (spec.source != "file" && spec.source != "synthetic")
    throw ParseError("experiment source must be 'file' or 'synthetic'");
  spec.data_path = cfg.get_string("data", "");
  spec.schema_path = cfg.get_string("schema", "");
  spec.labels_path = cfg.get_string("labels", "");
  spec.output_dir = cfg.get_string("output_dir", ".");

  spec.synth.components = cfg.get_uint("synth_components", spec.synth.components);
  spec.synth.samples_per_component = cfg.get_uint("synth_samples", spec.synth.samples_per_component);
  spec.synth.outlier_fraction = cfg.get_double("synth_outlier_fraction", spec.synth.outlier_fraction);
  spec.synth.noise_scale = cfg.get_double("synth_noise_scale", spec.synth.noise_scale);

  auto& e = spec.experiment;
  e.seed = cfg.get_uint("seed", 0);
  spec.synth.seed = derive_seed(e.seed, Stage::synth);
  e.contaminate = cfg.get_bool("contaminate", false);
  e.contamination.fraction = cfg.get_double("contamination_fraction", e.contamination.fraction);
  e.contamination.shift_low = cfg.get_double("shift_low", e.contamination.shift_low);
  e.contamination.shift_high = cfg.get_double("shift_high", e.contamination.shift_high);
  e.test_fraction = cfg.get_double("test_fraction", e.test_fraction);
  e.alpha = cfg.get_double("alpha", spec.source == "synthetic" ? 5.0 : 10.0);
  e.training = TrainingConfig::from_config(
      cfg, spec.source == "synthetic" ? TrainingConfig::synthetic_defaults() : TrainingConfig::small_data_defaults());
  if (spec.source == "file" && (spec.data_path.empty() || spec.schema_path.empty()))
    throw ParseError("experiment with source = file needs 'data' and 'schema'");
  return spec;
}

Dataset load_experiment_data(const ExperimentSpec& spec) {
  if (spec.source == "synthetic") return generate_synthetic(spec.synth).data;
  const Schema schema = parse_schema(read_file(spec.schema_path));
  std::ifstream in(spec.data_path);
  if (!in) throw Error("cannot open '" + spec.data_path + "'");
  Dataset data = load_csv(in, schema);
  if (!spec.labels_path.empty()) {
    std::ifstream lin(spec.labels_path);
    if (!lin) throw Error("cannot open '" + spec.labels_path + "'");
    data.set_labels(load_labels(lin));
  }
  return data;
}

std::vector<HistogramBin> score_histogram(std::span<const double> scores, std::span<const Label> labels,
                                          std::size_t bins) {
  if (scores.size() != labels.size()) throw ShapeError("scores and labels differ in length");
  if (scores.empty() || bins == 0) return {};
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it;
  const double hi = *hi_it > lo ? *hi_it : lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = lo + width * static_cast<double>(b);
    out[b].upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto b = static_cast<std::size_t>((scores[i] - lo) / width);
    b = std::min(b, bins - 1);
    (labels[i] == Label::outlier ? out[b].outliers : out[b].inliers) += 1;
  }
  return out;
}

void write_histogram(std::ostream& out, const std::vector<HistogramBin>& bins, double threshold) {
  out << "# free-energy histogram\n# threshold " << shortest(threshold) << "\n# center inliers outliers\n";
  for (const auto& b : bins) out << shortest(0.5 * (b.lower + b.upper)) << ' ' << b.inliers << ' ' << b.outliers << '\n';
}

void write_training_curve(std::ostream& out, const TrainingReport& report) {
  out << "epoch,train_free_energy,validation_free_energy\n";
  for (std::size_t e = 0; e < report.train_free_energy.size(); ++e) {
    out << e + 1 << ',' << shortest(report.train_free_energy[e]) << ',';
    if (e < report.validation_free_energy.size()) out << shortest(report.validation_free_energy[e]);
    out << '\n';
  }
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
  write_file_atomically(path("metrics.csv"), [&](std::ostream& o) { write_metrics(o, result.test_metrics); });
  write_file_atomically(path("train_metrics.csv"), [&](std::ostream& o) { write_metrics(o, result.train_metrics); });
  write_file_atomically(path("scores_train.csv"), [&](std::ostream& o) { write_score_report(o, result.train_scores); });
  write_file_atomically(path("scores_test.csv"), [&](std::ostream& o) { write_score_report(o, result.test_scores); });
  write_file_atomically(path("training_curve.csv"), [&](std::ostream& o) { write_training_curve(o, result.training); });
  write_file_atomically(path("histogram_test.dat"), [&](std::ostream& o) {
    write_histogram(o, score_histogram(result.test_scores.scores, result.test_labels, 40), result.test_scores.threshold);
  });
  write_file_atomically(path("model.txt"), [&](std::ostream& o) { save_model(result.model, o); });
}

}  // namespace mvrbm
