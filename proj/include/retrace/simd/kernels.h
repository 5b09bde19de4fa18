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

#ifndef RETRACE_SIMD_KERNELS_H_
#define RETRACE_SIMD_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

// Double-precision vector kernels behind the LDA inner loops and the viz
// distance math. Each instruction set provides the same table of functions;
// the scalar table is the reference the others are tested against.
namespace retrace::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i x[i]^2
  double (*squared_norm)(const double* x, std::size_t n);
  // out[i] += s * a[i] * b[i]
  void (*scaled_product_add)(double* out, const double* a, const double* b,
                             double s, std::size_t n);
  // y[i] += s * x[i]
  void (*axpy)(double* y, const double* x, double s, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*multiply)(double* out, const double* a, const double* b,
                   std::size_t n);
  // x[i] *= s
  void (*scale)(double* x, double s, std::size_t n);
  // sum_i |a[i] - b[i]|
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
};

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

// Instruction set used by kernels(). Chosen once from the CPU, unless the
// RETRACE_SIMD environment variable ("scalar", "avx2", "neon") names an
// available one.
Isa active_isa();

// Overrides the active instruction set (tests and --simd flags). Throws
// ValidationError when the ISA is not available on this CPU.
void set_active_isa(Isa isa);
Isa parse_isa(std::string_view name);

const KernelTable& kernels();
const KernelTable& kernels_for(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> x) {
  return kernels().sum(x.data(), x.size());
}
inline void scaled_product_add(std::span<double> out, std::span<const double> a,
                               std::span<const double> b, double s) {
  kernels().scaled_product_add(out.data(), a.data(), b.data(), s, out.size());
}
inline void axpy(std::span<double> y, std::span<const double> x, double s) {
  kernels().axpy(y.data(), x.data(), s, y.size());
}
inline void multiply(std::span<double> out, std::span<const double> a,
                     std::span<const double> b) {
  kernels().multiply(out.data(), a.data(), b.data(), out.size());
}
inline void scale(std::span<double> x, double s) {
  kernels().scale(x.data(), s, x.size());
}
inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  return kernels().l1_distance(a.data(), b.data(), a.size());
}

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace retrace::simd

#endif  // RETRACE_SIMD_KERNELS_H_
