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

#include "eam/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eam/errors.hpp"

namespace eam {

Quantizer::Quantizer(std::vector<float> lo, std::vector<float> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw DomainError("quantizer bounds differ in length");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] <= hi_[i])) {
      throw DomainError("quantizer lo > hi for feature " + std::to_string(i));
    }
  }
}

Quantizer Quantizer::fit(std::span<const FeatureVector> rows) {
  if (rows.empty()) throw DomainError("cannot fit a quantizer on no rows");
  std::vector<float> lo = rows.front();
  std::vector<float> hi = rows.front();
  for (const auto& row : rows) {
    if (row.size() != lo.size()) throw DomainError("ragged feature rows");
    for (std::size_t i = 0; i < row.size(); ++i) {
      lo[i] = std::min(lo[i], row[i]);
      hi[i] = std::max(hi[i], row[i]);
    }
  }
  return Quantizer(std::move(lo), std::move(hi));
}

DiscreteFunction Quantizer::quantize(std::span<const float> x, std::size_t rows) const {
  if (x.size() != n()) {
    throw DomainError("feature vector has " + std::to_string(x.size()) +
                      " entries, quantizer expects " + std::to_string(n()));
  }
  if (rows == 0) throw DomainError("rows must be positive");
  const double top = static_cast<double>(rows - 1);
  DiscreteFunction f(n());
  for (std::size_t i = 0; i < n(); ++i) {
    const double span = static_cast<double>(hi_[i]) - lo_[i];
    Value v = 0;
    if (span > 0.0 && rows > 1) {
      const double scaled = (static_cast<double>(x[i]) - lo_[i]) / span * top;
      const double rounded = std::floor(scaled + 0.5);
      v = static_cast<Value>(std::clamp(rounded, 0.0, top));
    }
    f.set(i, v);
  }
  return f;
}

FeatureVector Quantizer::dequantize(const DiscreteFunction& f, std::size_t rows) const {
  if (f.size() != n()) throw DomainError("function size does not match quantizer");
  if (rows == 0) throw DomainError("rows must be positive");
  const auto values = f.values();
  FeatureVector x(n());
  for (std::size_t i = 0; i < n(); ++i) {
    if (values[i] >= rows) throw DomainError("value outside the row range");
    const double lo = lo_[i];
    const double hi = hi_[i];
    if (rows == 1) {
      x[i] = static_cast<float>((lo + hi) / 2.0);
    } else {
      x[i] = static_cast<float>(lo + values[i] / static_cast<double>(rows - 1) * (hi - lo));
    }
  }
  return x;
}

}  // namespace eam
