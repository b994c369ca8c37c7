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

// Synthetic mixed-type benchmark: a Gaussian mixture in latent space, planted
// outliers by additive uniform noise, then a Thurstonian mapping of latent
// dimensions onto gaussian, binary and nominal observed columns.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mvrbm/dataset.hpp"

namespace mvrbm {

enum class CovarianceRecipe {
  // A A^T + d I with A_ij ~ Normal(0,1).
  random,
  identity,
};

struct SynthConfig {
  std::size_t components = 3;
  std::size_t latent_dim = 15;
  std::size_t samples_per_component = 1000;
  double outlier_fraction = 0.05;
  // Noise added to outlier dims is Uniform(0, noise_scale).
  double noise_scale = 18.0;
  // Component means are drawn uniformly from [-mean_box, mean_box]^d.
  double mean_box = 5.0;
  CovarianceRecipe covariance = CovarianceRecipe::random;
  // Observed layout: latent dims [0, g) stay gaussian, the next b become
  // binary, the remaining ones form nominal groups of `nominal_group` dims.
  std::size_t gaussian_dims = 3;
  std::size_t binary_dims = 3;
  std::size_t nominal_dims = 9;
  std::size_t nominal_group = 3;
  std::uint64_t seed = 0;

  std::size_t rows() const noexcept { return components * samples_per_component; }
  void validate() const;
};

struct LatentSample {
  std::size_t rows = 0;
  std::size_t dim = 0;
  // Row-major rows x dim.
  std::vector<double> values;
  std::vector<std::size_t> component;
  // One mean vector per component.
  std::vector<std::vector<double>> means;

  double at(std::size_t r, std::size_t d) const { return values[r * dim + d]; }
  double& at(std::size_t r, std::size_t d) { return values[r * dim + d]; }
};

LatentSample generate_latent(const SynthConfig& config);

// Picks round(fraction * n) rows without replacement and adds an independent
// Uniform(0, scale) draw to every dimension of each. Returns per-row flags.
std::vector<Label> inject_uniform_noise(LatentSample& latent, double fraction, double scale, std::uint64_t seed);

// Schema of the observed columns for a layout: gauss_*, bin_*, nom_*.
Schema synthetic_schema(const SynthConfig& config);

// Binary thresholds drawn uniformly between the 25th and 75th percentile of
// each binary latent dim (seeded from config).
std::vector<double> draw_binary_thresholds(const LatentSample& latent, const SynthConfig& config);

Dataset thurstonian_transform(const LatentSample& latent, const SynthConfig& config);
Dataset thurstonian_transform(const LatentSample& latent, const SynthConfig& config,
                              const std::vector<double>& thresholds);

struct SyntheticData {
  // Observed dataset with ground-truth labels attached.
  Dataset data;
  // Latent values after noise injection.
  LatentSample latent;
};

// Full pipeline; a pure function of `config`.
SyntheticData generate_synthetic(const SynthConfig& config);

}  // namespace mvrbm
