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

#include "eam/amr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "eam/errors.hpp"

namespace eam {

DiscreteFunction DiscreteFunction::total(const std::vector<Value>& values) {
  DiscreteFunction f(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) f.values_[i] = values[i];
  return f;
}

bool DiscreteFunction::is_total() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const auto& v) { return v.has_value(); });
}

std::size_t DiscreteFunction::defined_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

std::vector<Value> DiscreteFunction::values() const {
  std::vector<Value> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i]) throw DomainError("attribute " + std::to_string(i) + " is undefined");
    out.push_back(*values_[i]);
  }
  return out;
}

Amr::Amr(std::size_t n, std::size_t rows)
    : n_(n), rows_(rows), words_per_column_((rows + 63) / 64) {
  if (n == 0) throw DomainError("AMR needs at least one attribute");
  if (rows == 0) throw DomainError("AMR needs at least one row");
  bits_.assign(n_ * words_per_column_, 0);
  counts_.assign(n_, 0);
}

bool Amr::cell(std::size_t column, Value value) const {
  if (column >= n_ || value >= rows_) throw DomainError("cell index out of range");
  return (bits_[word_index(column, value)] >> (value % 64)) & 1U;
}

void Amr::check_function(const DiscreteFunction& f) const {
  if (f.size() != n_) {
    throw DomainError("function has " + std::to_string(f.size()) +
                      " attributes, register has " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (auto v = f[i]; v && *v >= rows_) {
      throw DomainError("value " + std::to_string(*v) + " of attribute " +
                        std::to_string(i) + " outside [0, " +
                        std::to_string(rows_ - 1) + "]");
    }
  }
}

void Amr::register_function(const DiscreteFunction& f) {
  check_function(f);
  for (std::size_t i = 0; i < n_; ++i) {
    auto v = f[i];
    if (!v) continue;
    std::uint64_t& word = bits_[word_index(i, *v)];
    const std::uint64_t mask = std::uint64_t{1} << (*v % 64);
    if (!(word & mask)) {
      word |= mask;
      ++counts_[i];
    }
  }
  ++registered_;
}

std::size_t Amr::misses(const DiscreteFunction& cue) const {
  check_function(cue);
  std::size_t missed = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    auto v = cue[i];
    if (v && !((bits_[word_index(i, *v)] >> (*v % 64)) & 1U)) ++missed;
  }
  return missed;
}

bool Amr::recognize(const DiscreteFunction& cue, std::size_t tolerance) const {
  return misses(cue) <= tolerance;
}

Value Amr::nearest_on(std::size_t column, Value value) const {
  if (column >= n_ || value >= rows_) throw DomainError("cell index out of range");
  if (counts_[column] == 0) throw UnregisteredAttribute(column);
  if (cell(column, value)) return value;
  for (std::size_t d = 1; d < rows_; ++d) {
    if (d <= value && cell(column, static_cast<Value>(value - d))) {
      return static_cast<Value>(value - d);
    }
    if (value + d < rows_ && cell(column, static_cast<Value>(value + d))) {
      return static_cast<Value>(value + d);
    }
  }
  throw UnregisteredAttribute(column);  // unreachable with counts_ > 0
}

ColumnRun Amr::column_run(std::size_t column, Value value) const {
  const Value centre = nearest_on(column, value);
  ColumnRun run{centre, centre};
  while (run.lo > 0 && cell(column, run.lo - 1)) --run.lo;
  while (run.hi + 1 < rows_ && cell(column, run.hi + 1)) ++run.hi;
  return run;
}

std::optional<DiscreteFunction> Amr::retrieve(const DiscreteFunction& cue,
                                              std::size_t tolerance, Rng& rng) const {
  if (!recognize(cue, tolerance)) return std::nullopt;

  DiscreteFunction out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (auto v = cue[i]) {
      // For a tolerated miss the mode moves to the nearest on cell.
      const Value mode = nearest_on(i, *v);
      const ColumnRun run = column_run(i, mode);
      out.set(i, sample_triangular(run.lo, run.hi, mode, rng));
    } else {
      if (counts_[i] == 0) throw UnregisteredAttribute(i);
      std::uniform_int_distribution<std::size_t> pick(0, counts_[i] - 1);
      std::size_t k = pick(rng);
      for (Value r = 0; r < rows_; ++r) {
        if (cell(i, r) && k-- == 0) {
          out.set(i, r);
          break;
        }
      }
    }
  }
  return out;
}

double Amr::entropy() const { return pattern_count_log2() / static_cast<double>(n_); }

double Amr::pattern_count_log2() const {
  double sum = 0.0;
  for (std::uint32_t mu : counts_) {
    if (mu > 1) sum += std::log2(static_cast<double>(mu));
  }
  return sum;
}

bool Amr::contains(const Amr& other) const {
  if (other.n_ != n_ || other.rows_ != rows_) return false;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if ((other.bits_[w] & ~bits_[w]) != 0) return false;
  }
  return true;
}

std::vector<double> triangular_weights(Value lo, Value hi, Value mode) {
  if (lo > hi) throw DomainError("empty run");
  mode = std::clamp(mode, lo, hi);
  const Value w = std::max(mode - lo, hi - mode);
  std::vector<double> weights;
  weights.reserve(hi - lo + 1);
  for (Value v = lo; v <= hi; ++v) {
    const Value dist = v > mode ? v - mode : mode - v;
    weights.push_back(static_cast<double>(w + 1 - dist));
  }
  return weights;
}

Value sample_triangular(Value lo, Value hi, Value mode, Rng& rng) {
  if (lo == hi) return lo;
  const auto weights = triangular_weights(lo, hi, mode);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  return lo + static_cast<Value>(dist(rng));
}

}  // namespace eam
