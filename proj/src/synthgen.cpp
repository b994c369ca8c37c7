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

#include "mvrbm/synthgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvrbm/error.hpp"
#include "mvrbm/seeds.hpp"

namespace mvrbm {

namespace {

// Sub-streams of the synth stage seed.
enum : std::uint64_t { kLatentStream = 1, kNoiseStream = 2, kThresholdStream = 3 };

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return derive_seed(derive_seed(seed, Stage::synth), stream);
}

// Linear-interpolated quantile of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void SynthConfig::validate() const {
  if (components == 0) throw DomainError("need at least one mixture component");
  if (samples_per_component == 0) throw DomainError("samples per component must be positive");
  if (latent_dim == 0) throw DomainError("latent dimension must be positive");
  if (gaussian_dims + binary_dims + nominal_dims != latent_dim)
    throw DomainError("layout dims must sum to the latent dimension");
  if (nominal_dims > 0 && (nominal_group < 2 || nominal_dims % nominal_group != 0))
    throw DomainError("nominal dims must split into groups of at least 2");
  if (!(outlier_fraction > 0.0 && outlier_fraction < 1.0)) throw DomainError("outlier fraction must lie in (0,1)");
  if (!(noise_scale >= 0.0) || !(mean_box >= 0.0)) throw DomainError("noise scale and mean box must be >= 0");
}

LatentSample generate_latent(const SynthConfig& config) {
  config.validate();
  const std::size_t d = config.latent_dim;
  Rng rng(stream_seed(config.seed, kLatentStream));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> box(-config.mean_box, config.mean_box);

  LatentSample out;
  out.rows = config.rows();
  out.dim = d;
  out.values.resize(out.rows * d);
  out.component.resize(out.rows);
  std::size_t row = 0;
  for (std::size_t c = 0; c < config.components; ++c) {
    Eigen::VectorXd mean(d);
    for (std::size_t j = 0; j < d; ++j) mean[static_cast<Eigen::Index>(j)] = config.mean_box > 0.0 ? box(rng) : 0.0;
    Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (config.covariance == CovarianceRecipe::random) {
      Eigen::MatrixXd a(d, d);
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
      Eigen::MatrixXd cov = a * a.transpose();
      cov.diagonal().array() += static_cast<double>(d);
      lower = cov.llt().matrixL();
    }
    out.means.emplace_back(mean.data(), mean.data() + d);
    Eigen::VectorXd z(d);
    for (std::size_t s = 0; s < config.samples_per_component; ++s, ++row) {
      for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = normal(rng);
      const Eigen::VectorXd x = mean + lower * z;
      std::copy(x.data(), x.data() + d, out.values.begin() + static_cast<std::ptrdiff_t>(row * d));
      out.component[row] = c;
    }
  }
  return out;
}

std::vector<Label> inject_uniform_noise(LatentSample& latent, double fraction, double scale, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("outlier fraction must lie in (0,1)");
  if (!(scale >= 0.0)) throw DomainError("noise scale must be >= 0");
  const std::size_t m = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(latent.rows)));
  Rng rng(seed);
  std::vector<std::size_t> order(latent.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));

  std::vector<Label> flags(latent.rows, Label::inlier);
  std::uniform_real_distribution<double> noise(0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = order[i];
    flags[r] = Label::outlier;
    for (std::size_t d = 0; d < latent.dim; ++d) latent.at(r, d) += scale * noise(rng);
  }
  return flags;
}

Schema synthetic_schema(const SynthConfig& config) {
  std::vector<ColumnSpec> cols;
  for (std::size_t i = 0; i < config.gaussian_dims; ++i)
    cols.push_back({"gauss_" + std::to_string(i), ColumnKind::gaussian, 0});
  for (std::size_t i = 0; i < config.binary_dims; ++i)
    cols.push_back({"bin_" + std::to_string(i), ColumnKind::binary, 0});
  const std::size_t groups = config.nominal_group == 0 ? 0 : config.nominal_dims / config.nominal_group;
  for (std::size_t i = 0; i < groups; ++i)
    cols.push_back({"nom_" + std::to_string(i), ColumnKind::nominal, config.nominal_group});
  return Schema(std::move(cols));
}

std::vector<double> draw_binary_thresholds(const LatentSample& latent, const SynthConfig& config) {
  Rng rng(stream_seed(config.seed, kThresholdStream));
  std::vector<double> thresholds;
  std::vector<double> column(latent.rows);
  for (std::size_t i = 0; i < config.binary_dims; ++i) {
    const std::size_t d = config.gaussian_dims + i;
    for (std::size_t r = 0; r < latent.rows; ++r) column[r] = latent.at(r, d);
    std::sort(column.begin(), column.end());
    const double lo = quantile(column, 0.25);
    const double hi = quantile(column, 0.75);
    thresholds.push_back(lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }
  return thresholds;
}

Dataset thurstonian_transform(const LatentSample& latent, const SynthConfig& config,
                              const std::vector<double>& thresholds) {
  config.validate();
  if (latent.dim != config.latent_dim) throw ShapeError("latent dimension does not match layout");
  if (thresholds.size() != config.binary_dims) throw ShapeError("need one threshold per binary dim");
  Dataset out(synthetic_schema(config));
  std::vector<double> row(out.cols());
  const std::size_t groups = config.nominal_dims / config.nominal_group;
  for (std::size_t r = 0; r < latent.rows; ++r) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < config.gaussian_dims; ++i) row[c++] = latent.at(r, i);
    for (std::size_t i = 0; i < config.binary_dims; ++i)
      row[c++] = latent.at(r, config.gaussian_dims + i) >= thresholds[i] ? 1.0 : 0.0;
    const std::size_t base = config.gaussian_dims + config.binary_dims;
    for (std::size_t g = 0; g < groups; ++g) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < config.nominal_group; ++j)
        if (latent.at(r, base + g * config.nominal_group + j) > latent.at(r, base + g * config.nominal_group + best))
          best = j;
      row[c++] = static_cast<double>(best);
    }
    out.append(row);
  }
  return out;
}

Dataset thurstonian_transform(const LatentSample& latent, const SynthConfig& config) {
  return thurstonian_transform(latent, config, draw_binary_thresholds(latent, config));
}

SyntheticData generate_synthetic(const SynthConfig& config) {
  SyntheticData out;
  out.latent = generate_latent(config);
  auto flags = inject_uniform_noise(out.latent, config.outlier_fraction, config.noise_scale,
                                    stream_seed(config.seed, kNoiseStream));
  out.data = thurstonian_transform(out.latent, config);
  out.data.set_labels(std::move(flags));
  return out;
}

}  // namespace mvrbm
