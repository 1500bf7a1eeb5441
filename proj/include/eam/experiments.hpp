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
 * Sweep procedures over a feature dataset.
 *
 * Every fold is set up the same way: the dataset is split by segment bucket,
 * a quantizer is fitted on the train role (or taken from the sidecar), the
 * remember role fills one register per class and the test role is evaluated.
 *
 *  - experiment_rows_sweep: full remember set, registers of 2^m rows.
 *  - experiment_fill_sweep: fixed m, growing prefixes of the remember set.
 *  - experiment_retrieval: per cue and fill level, the system decision and the
 *    retrieved function mapped back to feature space.
 *  - experiment_occlusion: experiment_retrieval over a tolerance sweep.
 *
 * Cells of a sweep are independent and may run on several threads; results
 * are assembled in a fixed order so output does not depend on scheduling.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eam/dataset.hpp"
#include "eam/metrics.hpp"

namespace eam {

inline constexpr const char* kArtifactVersion = "eam 1.0.0";
inline constexpr int kMeanFold = -1;

struct SweepRow {
  int fold = kMeanFold;  // kMeanFold marks the fold-averaged row
  int key = 0;           // m or fill percent
  double entropy = 0.0;
  double reg_precision = 0.0;
  double reg_recall = 0.0;
  double sys_precision = 0.0;
  double sys_recall = 0.0;
  double accepting_avg = 0.0;
  std::size_t undefined = 0;  // undefined ratios reported as 1.0
};

struct RowsSweepConfig {
  std::vector<int> folds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int m_min = 0;
  int m_max = 9;
  std::size_t tolerance = 0;
  unsigned threads = 1;
  bool sidecar_quantizer = false;
};

struct FillSweepConfig {
  std::vector<int> folds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int m = 6;
  std::vector<int> fills{1, 2, 4, 8, 16, 32, 64, 100};
  std::size_t tolerance = 0;
  unsigned threads = 1;
  bool sidecar_quantizer = false;
};

/// Per-fold rows plus one fold-averaged row per key, sorted by key then fold
/// with the averaged row last.
std::vector<SweepRow> experiment_rows_sweep(const Dataset& dataset, const RowsSweepConfig& cfg);
std::vector<SweepRow> experiment_fill_sweep(const Dataset& dataset, const FillSweepConfig& cfg);

struct RetrievalConfig {
  int fold = 0;
  int m = 6;
  std::vector<int> fills{1, 2, 4, 8, 16, 32, 64, 100};
  std::vector<std::size_t> tolerances{0};
  std::uint64_t seed = 1;
  std::size_t cues_per_class = 1;  // 0 = every test-role cue
  bool sidecar_quantizer = false;
};

struct RetrievalRow {
  std::size_t cue_id = 0;  // instance index in the cue dataset
  ClassId true_label = 0;
  int fill_pct = 0;
  std::size_t tolerance = 0;
  std::optional<ClassId> selected;  // nullopt = rejected
  FeatureVector features;           // dequantized retrieval, empty when rejected
};

/// Rows ordered by cue, then fill, then tolerance.
std::vector<RetrievalRow> experiment_retrieval(const Dataset& memory, const Dataset& cues,
                                               const RetrievalConfig& cfg);

/// experiment_retrieval with the default tolerance sweep {0, 1, 2, 3} when
/// cfg.tolerances is left at its default.
std::vector<RetrievalRow> experiment_occlusion(const Dataset& memory, const Dataset& cues,
                                               RetrievalConfig cfg);

/// Cue instances used by the retrieval experiments: test role of `fold`,
/// first `per_class` of each class in file order (0 = all).
std::vector<std::size_t> select_cues(const Dataset& cues, int fold, std::size_t per_class);

/// Ordered key/value parameter echo written at the top of every result file.
using RunMetadata = std::vector<std::pair<std::string, std::string>>;

/// Fixed method notes shared by every result file.
RunMetadata method_metadata();

void write_metadata(std::ostream& out, const RunMetadata& meta);

/// key_column is "m" or "fill_pct".
void write_sweep_csv(std::ostream& out, const std::string& key_column,
                     const std::vector<SweepRow>& rows, const RunMetadata& meta);

void write_retrieval_csv(std::ostream& out, std::size_t n,
                         const std::vector<RetrievalRow>& rows, const RunMetadata& meta);

}  // namespace eam
