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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mvrbm/contamination.hpp"
#include "mvrbm/dataset.hpp"
#include "mvrbm/detector.hpp"
#include "mvrbm/kv_config.hpp"
#include "mvrbm/metrics.hpp"
#include "mvrbm/synthgen.hpp"
#include "mvrbm/trainer.hpp"

namespace mvrbm {

struct ExperimentConfig {
  // Plant outliers with `contamination` before splitting. Otherwise the
  // dataset must already carry labels.
  bool contaminate = false;
  ContaminationConfig contamination;
  double test_fraction = 0.3;
  // Percentile of training scores used as the threshold.
  double alpha = 10.0;
  TrainingConfig training = TrainingConfig::small_data_defaults();
  // Master seed. Overrides the seeds inside `contamination` and `training`.
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  Model model;
  TrainingReport training;
  ScoreReport train_scores;
  ScoreReport test_scores;
  MetricsReport train_metrics;
  MetricsReport test_metrics;
  std::vector<Label> train_labels;
  std::vector<Label> test_labels;
};

// contaminate (optional) -> split -> standardize on train -> train -> beta
// from train scores -> detect on both splits -> metrics. Stage seeds come
// from the master seed via derive_seed.
ExperimentResult run_experiment(const Dataset& data, const ExperimentConfig& config);

// Experiment description file. Keys:
//   source = file | synthetic
//   data, schema, labels                     (source = file)
//   synth_components, synth_latent_dim, synth_samples, synth_outlier_fraction,
//   synth_noise_scale                        (source = synthetic)
//   contaminate, contamination_fraction, shift_low, shift_high
//   test_fraction, alpha, seed, output_dir
//   plus every TrainingConfig key
struct ExperimentSpec {
  std::string source = "file";
  std::string data_path;
  std::string schema_path;
  std::string labels_path;
  SynthConfig synth;
  ExperimentConfig experiment;
  std::string output_dir = ".";

  static ExperimentSpec from_config(const KeyValueConfig& cfg);
};

// Loads or generates the dataset an ExperimentSpec describes.
Dataset load_experiment_data(const ExperimentSpec& spec);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t inliers = 0;
  std::size_t outliers = 0;
};

std::vector<HistogramBin> score_histogram(std::span<const double> scores, std::span<const Label> labels,
                                          std::size_t bins);

// gnuplot-friendly: '#' comment lines, then `center inliers outliers` rows.
void write_histogram(std::ostream& out, const std::vector<HistogramBin>& bins, double threshold);

// epoch,train_free_energy,validation_free_energy
void write_training_curve(std::ostream& out, const TrainingReport& report);

// Writes metrics.csv, train_metrics.csv, scores_train.csv, scores_test.csv,
// training_curve.csv, histogram_test.dat and model.txt into `dir`.
void write_experiment_outputs(const ExperimentResult& result, const std::string& dir);

}  // namespace mvrbm
