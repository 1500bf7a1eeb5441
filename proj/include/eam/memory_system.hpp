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
#include <optional>
#include <vector>

#include "eam/amr.hpp"

namespace eam {

using ClassId = std::size_t;

struct SystemDecision {
  /// Selected class; nullopt means the cue was rejected (class unknown).
  std::optional<ClassId> selected;
  /// Set by MemorySystem::retrieve when the cue is accepted.
  std::optional<DiscreteFunction> retrieved;
  /// Classes whose register recognized the cue, ascending.
  std::vector<ClassId> accepting;

  bool accepted() const noexcept { return selected.has_value(); }
};

/// One register per class, all of the same shape. When several registers
/// accept a cue, the one with the smallest entropy wins; equal entropies go to
/// the smaller class id.
class MemorySystem {
 public:
  MemorySystem(std::size_t classes, std::size_t n, std::size_t rows);

  std::size_t classes() const noexcept { return registers_.size(); }
  std::size_t n() const noexcept { return registers_.front().n(); }
  std::size_t rows() const noexcept { return registers_.front().rows(); }

  const Amr& memory(ClassId c) const { return registers_.at(c); }

  /// Cached register entropy, refreshed on every registration.
  double entropy(ClassId c) const { return entropies_.at(c); }
  double mean_entropy() const;

  void register_instance(ClassId c, const DiscreteFunction& f);

  /// Picks the smallest-entropy class among `accepting`. nullopt if empty.
  std::optional<ClassId> select(const std::vector<ClassId>& accepting) const;

  SystemDecision recognize(const DiscreteFunction& cue, std::size_t tolerance = 0) const;
  SystemDecision retrieve(const DiscreteFunction& cue, std::size_t tolerance, Rng& rng) const;

 private:
  std::vector<Amr> registers_;
  std::vector<double> entropies_;
};

}  // namespace eam
