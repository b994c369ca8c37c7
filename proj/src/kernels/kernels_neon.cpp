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

#include <arm_neon.h>

#include <cmath>

#include "kernel_tables.hpp"

namespace mvrbm::kernels::detail {

namespace {

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void axpby_neon(double alpha, const double* x, double beta, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)), vmulq_f64(vb, vld1q_f64(y + i))));
  for (; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) sum = sum + a[i] * b[i];
  return sum;
}

void adam_step_neon(const AdamCoefficients& c, const double* g, double* m, double* v, double* theta,
                    std::size_t n) {
  const float64x2_t b1 = vdupq_n_f64(c.beta1);
  const float64x2_t b2 = vdupq_n_f64(c.beta2);
  const float64x2_t omb1 = vdupq_n_f64(1.0 - c.beta1);
  const float64x2_t omb2 = vdupq_n_f64(1.0 - c.beta2);
  const float64x2_t step = vdupq_n_f64(c.step);
  const float64x2_t eps = vdupq_n_f64(c.epsilon);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vg = vld1q_f64(g + i);
    const float64x2_t vm = vaddq_f64(vmulq_f64(b1, vld1q_f64(m + i)), vmulq_f64(omb1, vg));
    const float64x2_t vv = vaddq_f64(vmulq_f64(b2, vld1q_f64(v + i)), vmulq_f64(omb2, vmulq_f64(vg, vg)));
    const float64x2_t ratio = vdivq_f64(vm, vaddq_f64(vsqrtq_f64(vv), eps));
    vst1q_f64(m + i, vm);
    vst1q_f64(v + i, vv);
    vst1q_f64(theta + i, vaddq_f64(vld1q_f64(theta + i), vmulq_f64(step, ratio)));
  }
  const double one_minus_b1 = 1.0 - c.beta1;
  const double one_minus_b2 = 1.0 - c.beta2;
  for (; i < n; ++i) {
    m[i] = c.beta1 * m[i] + one_minus_b1 * g[i];
    v[i] = c.beta2 * v[i] + one_minus_b2 * (g[i] * g[i]);
    theta[i] = theta[i] + c.step * (m[i] / (std::sqrt(v[i]) + c.epsilon));
  }
}

constexpr KernelTable kNeon{Isa::neon, axpy_neon, axpby_neon, dot_neon, adam_step_neon};

}  // namespace

const KernelTable& neon_table() noexcept { return kNeon; }

}  // namespace mvrbm::kernels::detail
