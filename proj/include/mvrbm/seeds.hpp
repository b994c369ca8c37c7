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
#include <random>

namespace mvrbm {

using Rng = std::mt19937_64;

// Pipeline stages that draw randomness. The numeric values are part of the
// reproducibility contract; never renumber them.
enum class Stage : std::uint64_t {
  synth = 1,
  contaminate = 2,
  split = 3,
  init = 4,
  train = 5,
  kdd_sample = 6,
};

// One round of the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stage seed = splitmix64(master ^ splitmix64(stage)). Distinct stages get
// statistically independent streams from a single master seed.
std::uint64_t derive_seed(std::uint64_t master, Stage stage) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

}  // namespace mvrbm
