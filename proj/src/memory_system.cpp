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

#include "eam/memory_system.hpp"

#include <numeric>
#include <string>

#include "eam/errors.hpp"

namespace eam {

MemorySystem::MemorySystem(std::size_t classes, std::size_t n, std::size_t rows) {
  if (classes == 0) throw DomainError("memory system needs at least one class");
  registers_.assign(classes, Amr(n, rows));
  entropies_.assign(classes, 0.0);
}

double MemorySystem::mean_entropy() const {
  return std::accumulate(entropies_.begin(), entropies_.end(), 0.0) /
         static_cast<double>(entropies_.size());
}

void MemorySystem::register_instance(ClassId c, const DiscreteFunction& f) {
  if (c >= registers_.size()) {
    throw DomainError("class " + std::to_string(c) + " out of range for " +
                      std::to_string(registers_.size()) + " registers");
  }
  registers_[c].register_function(f);
  entropies_[c] = registers_[c].entropy();
}

std::optional<ClassId> MemorySystem::select(const std::vector<ClassId>& accepting) const {
  std::optional<ClassId> best;
  for (ClassId c : accepting) {
    if (!best || entropies_[c] < entropies_[*best] ||
        (entropies_[c] == entropies_[*best] && c < *best)) {
      best = c;
    }
  }
  return best;
}

SystemDecision MemorySystem::recognize(const DiscreteFunction& cue,
                                       std::size_t tolerance) const {
  SystemDecision decision;
  for (ClassId c = 0; c < registers_.size(); ++c) {
    if (registers_[c].recognize(cue, tolerance)) decision.accepting.push_back(c);
  }
  decision.selected = select(decision.accepting);
  return decision;
}

SystemDecision MemorySystem::retrieve(const DiscreteFunction& cue, std::size_t tolerance,
                                      Rng& rng) const {
  SystemDecision decision = recognize(cue, tolerance);
  if (decision.selected) {
    decision.retrieved = registers_[*decision.selected].retrieve(cue, tolerance, rng);
  }
  return decision;
}

}  // namespace eam
