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

#include "eam/metrics.hpp"

#include <numeric>

#include "eam/errors.hpp"

namespace eam {
namespace {

Ratio ratio(std::size_t num, std::size_t den) {
  if (den == 0) return {};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

Ratio precision(const Counts& c) { return ratio(c.tp, c.tp + c.fp); }
Ratio recall(const Counts& c) { return ratio(c.tp, c.tp + c.fn); }

double RegisterMetrics::mean_precision() const {
  std::vector<double> xs;
  for (const Counts& c : per_class) xs.push_back(precision(c).value);
  return mean(xs);
}

double RegisterMetrics::mean_recall() const {
  std::vector<double> xs;
  for (const Counts& c : per_class) xs.push_back(recall(c).value);
  return mean(xs);
}

double RegisterMetrics::mean_entropy() const { return mean(entropy); }

std::size_t RegisterMetrics::undefined() const {
  std::size_t count = 0;
  for (const Counts& c : per_class) {
    count += precision(c).undefined ? 1 : 0;
    count += recall(c).undefined ? 1 : 0;
  }
  return count;
}

Evaluation evaluate(const MemorySystem& sys, std::span<const LabeledCue> test,
                    std::size_t tolerance) {
  Evaluation ev;
  ev.registers.per_class.assign(sys.classes(), Counts{});
  for (ClassId c = 0; c < sys.classes(); ++c) ev.registers.entropy.push_back(sys.entropy(c));

  std::size_t accepting_total = 0;
  for (const LabeledCue& item : test) {
    if (item.label >= sys.classes()) throw DomainError("test label out of range");
    const SystemDecision decision = sys.recognize(item.cue, tolerance);

    bool own_accepted = false;
    for (ClassId c : decision.accepting) {
      if (c == item.label) {
        own_accepted = true;
        ++ev.registers.per_class[c].tp;
      } else {
        ++ev.registers.per_class[c].fp;
      }
    }
    if (!own_accepted) ++ev.registers.per_class[item.label].fn;

    if (!decision.selected) {
      ++ev.system.counts.fn;
    } else if (*decision.selected == item.label) {
      ++ev.system.counts.tp;
    } else {
      ++ev.system.counts.fp;
      ++ev.system.counts.fn;
    }
    accepting_total += decision.accepting.size();
  }

  ev.system.instances = test.size();
  ev.system.accepting_avg =
      test.empty() ? 0.0 : static_cast<double>(accepting_total) / static_cast<double>(test.size());
  ev.system.mean_entropy = sys.mean_entropy();
  return ev;
}

RegisterMetrics eval_register_metrics(const MemorySystem& sys,
                                      std::span<const LabeledCue> test,
                                      std::size_t tolerance) {
  return evaluate(sys, test, tolerance).registers;
}

SystemMetrics eval_system_metrics(const MemorySystem& sys, std::span<const LabeledCue> test,
                                  std::size_t tolerance) {
  return evaluate(sys, test, tolerance).system;
}

}  // namespace eam
