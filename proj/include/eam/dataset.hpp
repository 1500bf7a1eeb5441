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
 * Labeled feature datasets.
 *
 * On disk a dataset is a CSV file with header `label,segment,f0,...,f{n-1}`
 * and a JSON sidecar next to it (same basename, `.meta` suffix):
 *
 *   { "n": 64, "alphabet": "synthetic", "classes": ["c0", ...],
 *     "quantizer": { "lo": [...], "hi": [...] },   // optional
 *     "seed": 7 }                                  // optional
 *
 * Features are single precision and written with 9 significant digits, which
 * round-trips every float exactly.
 *
 * Each instance carries a segment bucket in [0, 99]. A fold f in [0, 9] puts
 * buckets [10f, 10f + 10) in the test role, the next 33 buckets (cyclically)
 * in the remember role and the remaining 57 in the train role.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eam/memory_system.hpp"
#include "eam/quantizer.hpp"

namespace eam {

inline constexpr int kSegments = 100;
inline constexpr int kFolds = 10;
inline constexpr int kTestBuckets = 10;
inline constexpr int kRememberBuckets = 33;

struct Instance {
  ClassId label = 0;
  int segment = 0;
  FeatureVector features;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct DatasetMeta {
  std::string alphabet = "synthetic";  // emnist-47 | emnist-36 | synthetic
  std::vector<std::string> classes;
  std::optional<Quantizer> quantizer;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

struct Dataset {
  std::size_t n = 0;
  std::vector<Instance> instances;
  DatasetMeta meta;

  std::size_t class_count() const noexcept { return meta.classes.size(); }

  /// Throws DomainError when an instance breaks the dataset invariants.
  void check() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// `data.csv` -> `data.meta`.
std::filesystem::path sidecar_path(const std::filesystem::path& data);

/// Throws ParseError (with the offending line) on malformed input.
Dataset read_dataset(const std::filesystem::path& data,
                     std::optional<std::filesystem::path> meta = std::nullopt);

void write_dataset(const Dataset& dataset, const std::filesystem::path& data,
                   std::optional<std::filesystem::path> meta = std::nullopt);

/// Decimal text used for features: 9 significant digits, exact for float.
std::string format_feature(float x);

enum class Role { kTrain, kRemember, kTest };

const char* role_name(Role role) noexcept;

/// Role of a segment bucket under the given fold.
Role role_for_segment(int segment, int fold);

struct SplitAssignment {
  int fold = 0;
  std::vector<Role> roles;  // parallel to Dataset::instances

  /// Instance indices with the given role, in file order.
  std::vector<std::size_t> indices(Role role) const;
};

/// Throws DomainError for a fold outside [0, 9].
SplitAssignment split_for_fold(const Dataset& dataset, int fold);

inline constexpr int kFillPercents[] = {1, 2, 4, 8, 16, 32, 64, 100};

/// Per class, the first ceil(percent * count / 100) of `indices` in order.
/// Only the percentages in kFillPercents are accepted.
std::vector<std::size_t> take_fraction(const Dataset& dataset,
                                       std::span<const std::size_t> indices, int percent);

struct SynthParams {
  std::size_t classes = 10;
  std::size_t per_class = 500;
  std::size_t n = 64;
  double separation = 0.02;  // noise standard deviation around each centroid
  std::uint64_t seed = 1;
};

/// Gaussian clusters around random centroids in [0, 1]^n. Instances are
/// interleaved by class and the k-th instance of a class gets segment k % 100.
/// Throws DomainError when classes < 2 or per_class < 10.
Dataset synth_generate(const SynthParams& params);

struct OcclusionParams {
  std::size_t features = 8;  // trailing features to corrupt
  double strength = 0.1;     // standard deviation of the added noise
  std::uint64_t seed = 1;
};

/// Copy of `dataset` with the last `features` coordinates of every instance
/// perturbed, standing in for cues whose lower part was hidden.
Dataset synth_occlude(const Dataset& dataset, const OcclusionParams& params);

}  // namespace eam
