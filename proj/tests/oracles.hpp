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

// Test-only reference models. Nothing here calls into the library's
// register code; the grid is a plain vector<vector<bool>> built directly from
// the functions that were stored.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eam/amr.hpp"

namespace eam::testing {

struct DenseGrid {
  std::size_t n;
  std::size_t rows;
  std::vector<std::vector<bool>> on;  // on[column][value]

  DenseGrid(std::size_t n_, std::size_t rows_)
      : n(n_), rows(rows_), on(n_, std::vector<bool>(rows_, false)) {}

  void add(const std::vector<Value>& f) {
    for (std::size_t i = 0; i < n; ++i) on[i][f[i]] = true;
  }

  std::size_t column_count(std::size_t i) const {
    std::size_t c = 0;
    for (bool b : on[i]) c += b ? 1 : 0;
    return c;
  }

  double entropy() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t mu = column_count(i);
      const double nu = mu == 0 ? 1.0 : 1.0 / static_cast<double>(mu);
      sum += std::log2(nu);
    }
    return -sum / static_cast<double>(n);
  }

  bool contains(const std::vector<Value>& f) const {
    for (std::size_t i = 0; i < n; ++i) {
      if (!on[i][f[i]]) return false;
    }
    return true;
  }

  std::size_t off_cells(const std::vector<Value>& f) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += on[i][f[i]] ? 0 : 1;
    return k;
  }
};

inline std::vector<Value> random_values(std::size_t n, std::size_t rows, std::mt19937_64& gen) {
  std::uniform_int_distribution<Value> pick(0, static_cast<Value>(rows - 1));
  std::vector<Value> f(n);
  for (auto& v : f) v = pick(gen);
  return f;
}

// Calls visit(f) for every total function in rows^n, in odometer order.
template <typename Visit>
void enumerate_functions(std::size_t n, std::size_t rows, Visit visit) {
  std::vector<Value> f(n, 0);
  while (true) {
    visit(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == rows) f[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace eam::testing
