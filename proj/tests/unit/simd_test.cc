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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "retrace/simd/kernels.h"

namespace retrace::simd {
namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void expect_close(double a, double b, double scale) {
  EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, scale));
}

// Every vector variant agrees with the scalar reference across lengths that
// exercise the main loop, the 4-wide loop and the scalar tail.
TEST(SimdEquivalenceTest, ReductionsMatchScalar) {
  const KernelTable& ref = kernels_for(Isa::kScalar);
  std::mt19937_64 rng(42);
  for (Isa isa : vector_isas()) {
    const KernelTable& k = kernels_for(isa);
    for (std::size_t n = 0; n <= 67; ++n) {
      auto a = random_vector(rng, n);
      auto b = random_vector(rng, n);
      double scale = static_cast<double>(n) * 4.0;
      expect_close(k.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), scale);
      expect_close(k.sum(a.data(), n), ref.sum(a.data(), n), scale);
      expect_close(k.squared_norm(a.data(), n), ref.squared_norm(a.data(), n), scale);
      expect_close(k.l1_distance(a.data(), b.data(), n),
                   ref.l1_distance(a.data(), b.data(), n), scale);
    }
  }
}

TEST(SimdEquivalenceTest, ElementwiseMatchScalar) {
  const KernelTable& ref = kernels_for(Isa::kScalar);
  std::mt19937_64 rng(43);
  for (Isa isa : vector_isas()) {
    const KernelTable& k = kernels_for(isa);
    for (std::size_t n = 0; n <= 35; ++n) {
      auto a = random_vector(rng, n);
      auto b = random_vector(rng, n);
      auto out_ref = random_vector(rng, n);
      auto out = out_ref;
      ref.scaled_product_add(out_ref.data(), a.data(), b.data(), 0.75, n);
      k.scaled_product_add(out.data(), a.data(), b.data(), 0.75, n);
      for (std::size_t i = 0; i < n; ++i) expect_close(out[i], out_ref[i], 1.0);

      ref.axpy(out_ref.data(), a.data(), -1.5, n);
      k.axpy(out.data(), a.data(), -1.5, n);
      for (std::size_t i = 0; i < n; ++i) expect_close(out[i], out_ref[i], 1.0);

      ref.multiply(out_ref.data(), a.data(), b.data(), n);
      k.multiply(out.data(), a.data(), b.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(out[i], out_ref[i]);

      ref.scale(out_ref.data(), 3.25, n);
      k.scale(out.data(), 3.25, n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(out[i], out_ref[i]);
    }
  }
}

TEST(SimdDispatchTest, ScalarAlwaysAvailableAndSelectable) {
  Isa before = active_isa();
  EXPECT_TRUE(isa_available(Isa::kScalar));
  set_active_isa(Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_DOUBLE_EQ(dot(a, b), 32.0);
  set_active_isa(before);
}

TEST(SimdDispatchTest, ParseIsa) {
  EXPECT_EQ(parse_isa("avx2"), Isa::kAvx2);
  EXPECT_EQ(isa_name(Isa::kNeon), "neon");
  EXPECT_ANY_THROW(parse_isa("sse9"));
}

}  // namespace
}  // namespace retrace::simd
