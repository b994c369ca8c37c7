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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernel_tables.hpp"

namespace mvrbm::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(MVRBM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return &scalar_table();
    case Isa::avx2:
#if defined(MVRBM_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::avx2_table();
#endif
      return nullptr;
    case Isa::neon:
#if defined(MVRBM_HAVE_NEON)
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* pick_default() noexcept {
  if (const char* env = std::getenv("MVRBM_ISA")) {
    const std::string_view want(env);
    for (const Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
      if (want == to_string(isa))
        if (const auto* t = table_for(isa)) return t;
  }
  if (const auto* t = table_for(Isa::avx2)) return t;
  if (const auto* t = table_for(Isa::neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out;
  for (const Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (const auto* t = table_for(isa)) out.push_back(t);
  return out;
}

const KernelTable& active() noexcept {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable* chosen = pick_default();
    g_active.compare_exchange_strong(t, chosen, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

bool select(Isa isa) noexcept {
  const auto* t = table_for(isa);
  if (t == nullptr) return false;
  g_active.store(t, std::memory_order_release);
  return true;
}

}  // namespace mvrbm::kernels
