// Copyright 2026 The retrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "retrace/common/error.h"
#include "retrace/simd/kernels.h"

namespace retrace::simd {

namespace detail {
#if !RETRACE_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !RETRACE_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if RETRACE_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("RETRACE_SIMD"); env && *env) {
    Isa requested = parse_isa(env);
    if (isa_available(requested)) return requested;
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(detect())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  throw ValidationError("unknown SIMD instruction set '" + std::string(name) +
                        "'");
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
    case Isa::kNeon:
      return detail::neon_table() != nullptr;
  }
  return false;
}

Isa active_isa() { return static_cast<Isa>(active_slot().load()); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw ValidationError("instruction set " + std::string(isa_name(isa)) +
                          " is not available on this CPU");
  }
  active_slot().store(static_cast<int>(isa));
}

const KernelTable& kernels_for(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      if (const KernelTable* t = detail::avx2_table()) return *t;
      break;
    case Isa::kNeon:
      if (const KernelTable* t = detail::neon_table()) return *t;
      break;
    case Isa::kScalar:
      break;
  }
  return detail::scalar_table();
}

const KernelTable& kernels() { return kernels_for(active_isa()); }

}  // namespace retrace::simd
