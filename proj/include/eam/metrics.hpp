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
 * Precision/recall accounting for a filled memory system.
 *
 * Register level: a test instance is a TP for its own class register when
 * that register accepts it and an FN when it rejects it; every other register
 * that accepts it gets an FP.
 *
 * System level: only the filtered decision counts. Correct class is a TP,
 * wrong class is one FP plus one FN, rejection by every register is one FN.
 *
 * A ratio with a zero denominator is reported as 1.0 and flagged undefined.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eam/memory_system.hpp"

namespace eam {

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Ratio {
  double value = 1.0;
  bool undefined = true;
};

Ratio precision(const Counts& c);
Ratio recall(const Counts& c);

struct LabeledCue {
  ClassId label = 0;
  DiscreteFunction cue;
};

struct RegisterMetrics {
  std::vector<Counts> per_class;
  std::vector<double> entropy;

  // Unweighted means over classes.
  double mean_precision() const;
  double mean_recall() const;
  double mean_entropy() const;
  /// Number of per-class precision and recall values that were undefined.
  std::size_t undefined() const;
};

struct SystemMetrics {
  Counts counts;
  std::size_t instances = 0;
  double accepting_avg = 0.0;
  double mean_entropy = 0.0;

  Ratio precision() const { return eam::precision(counts); }
  Ratio recall() const { return eam::recall(counts); }
};

struct Evaluation {
  RegisterMetrics registers;
  SystemMetrics system;
};

/// One recognition pass per test cue, feeding both accountings.
Evaluation evaluate(const MemorySystem& sys, std::span<const LabeledCue> test,
                    std::size_t tolerance);

RegisterMetrics eval_register_metrics(const MemorySystem& sys,
                                      std::span<const LabeledCue> test,
                                      std::size_t tolerance);

SystemMetrics eval_system_metrics(const MemorySystem& sys, std::span<const LabeledCue> test,
                                  std::size_t tolerance);

}  // namespace eam
