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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eam/amr.hpp"

namespace eam {

using FeatureVector = std::vector<float>;

// Per-feature min/max affine map between real features and row indices.
//
//   v = round_half_up((x - lo) / (hi - lo) * (rows - 1)), clamped to [0, rows - 1]
//   x = lo + v / (rows - 1) * (hi - lo)
//
// Constant features (lo == hi) quantize to 0. With a single row every value
// quantizes to 0 and dequantizes to (lo + hi) / 2.
class Quantizer {
 public:
  Quantizer() = default;
  Quantizer(std::vector<float> lo, std::vector<float> hi);

  /// Column-wise min and max. Throws DomainError on empty or ragged input.
  static Quantizer fit(std::span<const FeatureVector> rows);

  std::size_t n() const noexcept { return lo_.size(); }
  const std::vector<float>& lo() const noexcept { return lo_; }
  const std::vector<float>& hi() const noexcept { return hi_; }

  DiscreteFunction quantize(std::span<const float> x, std::size_t rows) const;

  /// Throws DomainError for a partial function.
  FeatureVector dequantize(const DiscreteFunction& f, std::size_t rows) const;

  friend bool operator==(const Quantizer&, const Quantizer&) = default;

 private:
  std::vector<float> lo_;
  std::vector<float> hi_;
};

}  // namespace eam
