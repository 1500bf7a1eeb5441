// Copyright 2026 The EAM Authors.
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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "eam/errors.hpp"
#include "eam/quantizer.hpp"

using eam::DiscreteFunction;
using eam::FeatureVector;
using eam::Quantizer;
using eam::Value;

TEST_CASE("fit takes column-wise min and max") {
  const std::vector<FeatureVector> one{{1.5F, -2.0F}};
  const Quantizer q1 = Quantizer::fit(one);
  CHECK(q1.lo() == one[0]);
  CHECK(q1.hi() == one[0]);

  const std::vector<FeatureVector> two{{0.0F, 10.0F}, {4.0F, 2.0F}};
  const Quantizer q2 = Quantizer::fit(two);
  CHECK(q2.lo() == std::vector<float>{0.0F, 2.0F});
  CHECK(q2.hi() == std::vector<float>{4.0F, 10.0F});

  CHECK_THROWS_AS(Quantizer::fit(std::vector<FeatureVector>{}), eam::DomainError);
  CHECK_THROWS_AS(Quantizer::fit(std::vector<FeatureVector>{{1.0F}, {1.0F, 2.0F}}),
                  eam::DomainError);
}

TEST_CASE("fit agrees with a brute-force column scan") {
  std::mt19937_64 gen(9);
  std::normal_distribution<float> dist(0.0F, 3.0F);
  std::vector<FeatureVector> rows(1000, FeatureVector(12));
  for (auto& r : rows) {
    for (auto& x : r) x = dist(gen);
  }
  const Quantizer q = Quantizer::fit(rows);
  for (std::size_t i = 0; i < 12; ++i) {
    float lo = rows[0][i];
    float hi = rows[0][i];
    for (const auto& r : rows) {
      if (r[i] < lo) lo = r[i];
      if (r[i] > hi) hi = r[i];
    }
    CHECK(q.lo()[i] == lo);
    CHECK(q.hi()[i] == hi);
  }
}

TEST_CASE("quantize endpoints, rounding and clamping") {
  const Quantizer q({0.0F, -1.0F, 3.0F}, {1.0F, 1.0F, 3.0F});
  const FeatureVector lo{0.0F, -1.0F, 3.0F};
  const FeatureVector hi{1.0F, 1.0F, 3.0F};
  CHECK(q.quantize(lo, 64).values() == std::vector<Value>{0, 0, 0});
  CHECK(q.quantize(hi, 64).values() == std::vector<Value>{63, 63, 0});

  // 0.5 * 63 = 31.5 rounds half up to 32.
  const FeatureVector mid{0.5F, 0.0F, 3.0F};
  CHECK(q.quantize(mid, 64).values() == std::vector<Value>{32, 32, 0});

  const FeatureVector outside{-5.0F, 7.0F, 100.0F};
  CHECK(q.quantize(outside, 64).values() == std::vector<Value>{0, 63, 0});

  // A single row maps everything to 0.
  CHECK(q.quantize(mid, 1).values() == std::vector<Value>{0, 0, 0});
  CHECK(q.quantize(outside, 1).values() == std::vector<Value>{0, 0, 0});

  CHECK_THROWS_AS(q.quantize(FeatureVector{1.0F}, 64), eam::DomainError);
}

TEST_CASE("dequantize returns grid points") {
  const Quantizer q({0.0F, -1.0F}, {1.0F, 1.0F});
  CHECK(q.dequantize(DiscreteFunction::total({0, 0}), 64) == FeatureVector{0.0F, -1.0F});
  CHECK(q.dequantize(DiscreteFunction::total({63, 63}), 64) == FeatureVector{1.0F, 1.0F});
  CHECK(q.dequantize(DiscreteFunction::total({0, 0}), 1) == FeatureVector{0.5F, 0.0F});

  DiscreteFunction partial(2);
  partial.set(0, 1);
  CHECK_THROWS_AS(q.dequantize(partial, 64), eam::DomainError);
  CHECK_THROWS_AS(q.dequantize(DiscreteFunction::total({64, 0}), 64), eam::DomainError);
}

TEST_CASE("grid values round-trip exactly") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<float> bound(-10.0F, 10.0F);
  for (std::size_t rows : {2U, 3U, 16U, 64U, 512U}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<float> lo(8);
      std::vector<float> hi(8);
      for (std::size_t i = 0; i < 8; ++i) {
        const float a = bound(gen);
        const float b = bound(gen);
        lo[i] = std::min(a, b);
        hi[i] = std::max(a, b) + 0.5F;  // non-constant features
      }
      const Quantizer q(lo, hi);
      std::uniform_int_distribution<Value> pick(0, static_cast<Value>(rows - 1));
      std::vector<Value> v(8);
      for (auto& x : v) x = pick(gen);
      const auto f = DiscreteFunction::total(v);
      CHECK(q.quantize(q.dequantize(f, rows), rows) == f);
    }
  }
}

TEST_CASE("quantization error stays within half a bin") {
  std::mt19937_64 gen(13);
  const Quantizer q({-2.0F, 0.0F, 5.0F}, {2.0F, 0.25F, 9.0F});
  for (std::size_t rows : {2U, 8U, 64U, 128U}) {
    for (int trial = 0; trial < 2000; ++trial) {
      FeatureVector x(3);
      for (std::size_t i = 0; i < 3; ++i) {
        std::uniform_real_distribution<float> in(q.lo()[i], q.hi()[i]);
        x[i] = in(gen);
      }
      const FeatureVector back = q.dequantize(q.quantize(x, rows), rows);
      for (std::size_t i = 0; i < 3; ++i) {
        const double half_bin = (double(q.hi()[i]) - q.lo()[i]) / (2.0 * double(rows - 1));
        CHECK(std::abs(double(back[i]) - x[i]) <= half_bin * (1.0 + 1e-5));
      }
    }
  }
}

TEST_CASE("quantization is monotone") {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<float> in(-3.0F, 3.0F);
  const Quantizer q({-2.0F}, {2.0F});
  for (int trial = 0; trial < 5000; ++trial) {
    float a = in(gen);
    float b = in(gen);
    if (a > b) std::swap(a, b);
    CHECK(*q.quantize(FeatureVector{a}, 64)[0] <= *q.quantize(FeatureVector{b}, 64)[0]);
  }
}

TEST_CASE("bounds must be ordered") {
  CHECK_THROWS_AS(Quantizer({1.0F}, {0.0F}), eam::DomainError);
  CHECK_THROWS_AS(Quantizer({1.0F}, {2.0F, 3.0F}), eam::DomainError);
}
