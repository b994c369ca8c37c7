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

// Dense inner loops shared by scoring, sampling and optimization.
//
// Each kernel has a scalar reference and, where the target allows, a vector
// variant. The variant is chosen once at startup from CPU features and can be
// pinned with the MVRBM_ISA environment variable (scalar | avx2 | neon).
//
// axpy, axpby and adam_step are element-wise and therefore bit-identical
// across variants. dot reassociates its sum in the vector variants.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mvrbm::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct AdamCoefficients {
  double beta1;
  double beta2;
  // Bias-corrected step: lr * sqrt(1 - beta2^t) / (1 - beta1^t).
  double step;
  // Epsilon scaled to the corrected denominator: eps * sqrt(1 - beta2^t).
  double epsilon;
};

struct KernelTable {
  Isa isa;
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[i] = alpha * x[i] + beta * y[i]
  void (*axpby)(double alpha, const double* x, double beta, double* y, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // Ascending Adam update of theta with gradient g, first/second moments m, v.
  void (*adam_step)(const AdamCoefficients& c, const double* g, double* m, double* v, double* theta,
                    std::size_t n);
};

const KernelTable& scalar_table() noexcept;

// Tables the running CPU can execute, scalar first.
std::vector<const KernelTable*> available_tables();

// The table in use. Selected on first call.
const KernelTable& active() noexcept;

// Overrides the active table (tests and benchmarks). Returns false if the ISA
// is not available on this CPU.
bool select(Isa isa) noexcept;

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  active().axpby(alpha, x.data(), beta, y.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace mvrbm::kernels
