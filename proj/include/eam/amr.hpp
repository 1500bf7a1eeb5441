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

/** @file
 * Associative memory register (AMR).
 *
 * An AMR is an n x rows boolean table. Columns are attributes, rows are the
 * discrete values an attribute can take. Objects are stored as functions from
 * attributes to values, and registering an object ORs its cells into the
 * table, so the table holds the relation formed by superposing every stored
 * function (plus whatever extra functions that superposition implies).
 *
 * Three operations act on the table:
 *   - register_function: cellwise inclusive OR of the cue into the table.
 *   - recognize: the cue is accepted when every defined cue cell is on,
 *     allowing up to `tolerance` misses.
 *   - retrieve: if recognized, build a new function by sampling each column
 *     from a triangular distribution centred on the cue, restricted to the
 *     contiguous run of on cells around it.
 *
 * Value indices are 0-based: a column with `rows` values uses [0, rows - 1].
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace eam {

using Value = std::uint32_t;
using Rng = std::mt19937_64;

/// A possibly partial map from attribute index to value.
class DiscreteFunction {
 public:
  DiscreteFunction() = default;

  /// n attributes, all undefined.
  explicit DiscreteFunction(std::size_t n) : values_(n) {}

  /// A total function with the given values.
  static DiscreteFunction total(const std::vector<Value>& values);

  std::size_t size() const noexcept { return values_.size(); }
  bool defined(std::size_t i) const { return values_.at(i).has_value(); }
  std::optional<Value> operator[](std::size_t i) const { return values_.at(i); }

  void set(std::size_t i, Value v) { values_.at(i) = v; }
  void clear(std::size_t i) { values_.at(i).reset(); }

  bool is_total() const noexcept;
  std::size_t defined_count() const noexcept;

  /// Values of a total function. Throws DomainError if any attribute is undefined.
  std::vector<Value> values() const;

  friend bool operator==(const DiscreteFunction&, const DiscreteFunction&) = default;

 private:
  std::vector<std::optional<Value>> values_;
};

/// Maximal contiguous run of on cells [lo, hi] in one column.
struct ColumnRun {
  Value lo = 0;
  Value hi = 0;

  friend bool operator==(const ColumnRun&, const ColumnRun&) = default;
};

class Amr {
 public:
  /// All cells off. Throws DomainError when n or rows is zero.
  Amr(std::size_t n, std::size_t rows);

  std::size_t n() const noexcept { return n_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t registered_count() const noexcept { return registered_; }

  bool cell(std::size_t column, Value value) const;

  /// Number of on cells in a column (mu_i).
  std::size_t column_count(std::size_t column) const { return counts_.at(column); }

  /// Sets cell (i, f(i)) for every defined attribute. Validates the whole
  /// function first, so an out-of-range value leaves the register unchanged.
  void register_function(const DiscreteFunction& f);

  /// Number of defined cue attributes whose cell is off.
  std::size_t misses(const DiscreteFunction& cue) const;

  /// True iff misses(cue) <= tolerance. Tolerance 0 is exact inclusion.
  bool recognize(const DiscreteFunction& cue, std::size_t tolerance = 0) const;

  /// Run containing `value` if its cell is on; otherwise the run containing the
  /// nearest on cell (ties toward the smaller index). Throws
  /// UnregisteredAttribute for an all-off column.
  ColumnRun column_run(std::size_t column, Value value) const;

  /// Nearest on cell to `value` in a column, ties toward the smaller index.
  Value nearest_on(std::size_t column, Value value) const;

  /// nullopt when the cue is rejected. Otherwise a total function that this
  /// register recognizes at tolerance 0.
  std::optional<DiscreteFunction> retrieve(const DiscreteFunction& cue,
                                           std::size_t tolerance, Rng& rng) const;

  /// (1/n) * sum_i log2(mu_i), with all-off columns contributing 0.
  double entropy() const;

  /// log2 of the number of total functions contained in the relation,
  /// i.e. entropy() * n.
  double pattern_count_log2() const;

  /// True when every on cell of `other` is also on here.
  bool contains(const Amr& other) const;

  friend bool operator==(const Amr& a, const Amr& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_ && a.bits_ == b.bits_;
  }

 private:
  void check_function(const DiscreteFunction& f) const;
  std::size_t word_index(std::size_t column, Value value) const {
    return column * words_per_column_ + value / 64;
  }

  std::size_t n_;
  std::size_t rows_;
  std::size_t words_per_column_;
  std::size_t registered_ = 0;
  std::vector<std::uint64_t> bits_;      // column-major, words_per_column_ per column
  std::vector<std::uint32_t> counts_;    // on cells per column
};

/// Draws v in [lo, hi] with probability proportional to w + 1 - |v - mode|,
/// w = max(mode - lo, hi - mode). `mode` is clamped into [lo, hi] first.
Value sample_triangular(Value lo, Value hi, Value mode, Rng& rng);

/// Unnormalized weights used by sample_triangular, index 0 is `lo`.
std::vector<double> triangular_weights(Value lo, Value hi, Value mode);

}  // namespace eam
