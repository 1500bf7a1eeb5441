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

#include "eam/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "eam/errors.hpp"

namespace eam {
namespace {

constexpr int kMaxM = 9;

// Runs fn(0..count-1) on up to `threads` workers. The first exception thrown
// by any task is rethrown on the caller's thread.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

std::size_t rows_for(int m) {
  if (m < 0 || m > kMaxM) throw DomainError("m must be in [0, 9]");
  return std::size_t{1} << m;
}

void check_folds(const std::vector<int>& folds) {
  if (folds.empty()) throw DomainError("no folds selected");
  for (int f : folds) {
    if (f < 0 || f >= kFolds) throw DomainError("fold must be in [0, 9]");
  }
}

// Everything a fold needs before registers are built.
struct FoldSetup {
  Quantizer quantizer;
  std::vector<std::size_t> remember;
  std::vector<std::size_t> test;
};

FoldSetup setup_fold(const Dataset& ds, int fold, bool sidecar_quantizer) {
  const SplitAssignment split = split_for_fold(ds, fold);
  FoldSetup setup;
  setup.remember = split.indices(Role::kRemember);
  setup.test = split.indices(Role::kTest);
  if (sidecar_quantizer) {
    if (!ds.meta.quantizer) throw DomainError("dataset sidecar has no quantizer");
    setup.quantizer = *ds.meta.quantizer;
  } else {
    std::vector<FeatureVector> train;
    for (std::size_t k : split.indices(Role::kTrain)) train.push_back(ds.instances[k].features);
    if (train.empty()) {
      throw DomainError("fold " + std::to_string(fold) + " has no train-role instances");
    }
    setup.quantizer = Quantizer::fit(train);
  }
  return setup;
}

MemorySystem fill_system(const Dataset& ds, const Quantizer& q, std::size_t rows,
                         const std::vector<std::size_t>& members) {
  MemorySystem sys(ds.class_count(), ds.n, rows);
  for (std::size_t k : members) {
    const Instance& inst = ds.instances[k];
    sys.register_instance(inst.label, q.quantize(inst.features, rows));
  }
  return sys;
}

std::vector<LabeledCue> quantize_cues(const Dataset& ds, const Quantizer& q, std::size_t rows,
                                      const std::vector<std::size_t>& members) {
  std::vector<LabeledCue> cues;
  cues.reserve(members.size());
  for (std::size_t k : members) {
    cues.push_back({ds.instances[k].label, q.quantize(ds.instances[k].features, rows)});
  }
  return cues;
}

SweepRow to_row(int fold, int key, const Evaluation& ev) {
  SweepRow row;
  row.fold = fold;
  row.key = key;
  row.entropy = ev.registers.mean_entropy();
  row.reg_precision = ev.registers.mean_precision();
  row.reg_recall = ev.registers.mean_recall();
  const Ratio p = ev.system.precision();
  const Ratio r = ev.system.recall();
  row.sys_precision = p.value;
  row.sys_recall = r.value;
  row.accepting_avg = ev.system.accepting_avg;
  row.undefined = ev.registers.undefined() + (p.undefined ? 1 : 0) + (r.undefined ? 1 : 0);
  return row;
}

// Appends a fold-averaged row after each key's per-fold rows.
std::vector<SweepRow> with_means(std::vector<SweepRow> cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.key != b.key ? a.key < b.key : a.fold < b.fold;
  });
  std::vector<SweepRow> out;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    SweepRow mean;
    mean.fold = kMeanFold;
    mean.key = cells[i].key;
    while (j < cells.size() && cells[j].key == cells[i].key) {
      const SweepRow& r = cells[j];
      mean.entropy += r.entropy;
      mean.reg_precision += r.reg_precision;
      mean.reg_recall += r.reg_recall;
      mean.sys_precision += r.sys_precision;
      mean.sys_recall += r.sys_recall;
      mean.accepting_avg += r.accepting_avg;
      mean.undefined += r.undefined;
      out.push_back(r);
      ++j;
    }
    const double count = static_cast<double>(j - i);
    mean.entropy /= count;
    mean.reg_precision /= count;
    mean.reg_recall /= count;
    mean.sys_precision /= count;
    mean.sys_recall /= count;
    mean.accepting_avg /= count;
    out.push_back(mean);
    i = j;
  }
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

std::vector<SweepRow> experiment_rows_sweep(const Dataset& dataset, const RowsSweepConfig& cfg) {
  check_folds(cfg.folds);
  if (cfg.m_min > cfg.m_max) throw DomainError("m-min exceeds m-max");
  rows_for(cfg.m_min);
  rows_for(cfg.m_max);

  std::vector<FoldSetup> setups;
  for (int fold : cfg.folds) setups.push_back(setup_fold(dataset, fold, cfg.sidecar_quantizer));

  const std::size_t m_count = static_cast<std::size_t>(cfg.m_max - cfg.m_min + 1);
  std::vector<SweepRow> cells(cfg.folds.size() * m_count);
  parallel_for(cells.size(), cfg.threads, [&](std::size_t cell) {
    const std::size_t f = cell / m_count;
    const int m = cfg.m_min + static_cast<int>(cell % m_count);
    const std::size_t rows = rows_for(m);
    const FoldSetup& setup = setups[f];
    const MemorySystem sys = fill_system(dataset, setup.quantizer, rows, setup.remember);
    const auto test = quantize_cues(dataset, setup.quantizer, rows, setup.test);
    cells[cell] = to_row(cfg.folds[f], m, evaluate(sys, test, cfg.tolerance));
  });
  return with_means(std::move(cells));
}

std::vector<SweepRow> experiment_fill_sweep(const Dataset& dataset, const FillSweepConfig& cfg) {
  check_folds(cfg.folds);
  const std::size_t rows = rows_for(cfg.m);
  if (cfg.fills.empty()) throw DomainError("no fill percentages selected");

  std::vector<FoldSetup> setups;
  for (int fold : cfg.folds) setups.push_back(setup_fold(dataset, fold, cfg.sidecar_quantizer));

  const std::size_t fill_count = cfg.fills.size();
  std::vector<SweepRow> cells(cfg.folds.size() * fill_count);
  parallel_for(cells.size(), cfg.threads, [&](std::size_t cell) {
    const std::size_t f = cell / fill_count;
    const int fill = cfg.fills[cell % fill_count];
    const FoldSetup& setup = setups[f];
    const auto members = take_fraction(dataset, setup.remember, fill);
    const MemorySystem sys = fill_system(dataset, setup.quantizer, rows, members);
    const auto test = quantize_cues(dataset, setup.quantizer, rows, setup.test);
    cells[cell] = to_row(cfg.folds[f], fill, evaluate(sys, test, cfg.tolerance));
  });
  return with_means(std::move(cells));
}

std::vector<std::size_t> select_cues(const Dataset& cues, int fold, std::size_t per_class) {
  std::vector<std::size_t> out;
  std::map<ClassId, std::size_t> taken;
  for (std::size_t k = 0; k < cues.instances.size(); ++k) {
    const Instance& inst = cues.instances[k];
    if (role_for_segment(inst.segment, fold) != Role::kTest) continue;
    if (per_class != 0 && taken[inst.label] >= per_class) continue;
    ++taken[inst.label];
    out.push_back(k);
  }
  return out;
}

std::vector<RetrievalRow> experiment_retrieval(const Dataset& memory, const Dataset& cues,
                                               const RetrievalConfig& cfg) {
  const std::size_t rows = rows_for(cfg.m);
  if (cues.n != memory.n) throw DomainError("cue file feature count differs from memory data");
  if (cues.class_count() != memory.class_count()) {
    throw DomainError("cue file class count differs from memory data");
  }
  if (cfg.fills.empty()) throw DomainError("no fill percentages selected");
  if (cfg.tolerances.empty()) throw DomainError("no tolerances selected");

  const FoldSetup setup = setup_fold(memory, cfg.fold, cfg.sidecar_quantizer);
  const auto cue_ids = select_cues(cues, cfg.fold, cfg.cues_per_class);

  const std::size_t per_fill = cue_ids.size() * cfg.tolerances.size();
  std::vector<RetrievalRow> rows_out(cfg.fills.size() * per_fill);

  for (std::size_t fi = 0; fi < cfg.fills.size(); ++fi) {
    const int fill = cfg.fills[fi];
    const auto members = take_fraction(memory, setup.remember, fill);
    const MemorySystem sys = fill_system(memory, setup.quantizer, rows, members);
    for (std::size_t ci = 0; ci < cue_ids.size(); ++ci) {
      const Instance& inst = cues.instances[cue_ids[ci]];
      const DiscreteFunction cue = setup.quantizer.quantize(inst.features, rows);
      for (std::size_t ti = 0; ti < cfg.tolerances.size(); ++ti) {
        const std::size_t tol = cfg.tolerances[ti];
        // Each cell draws from its own stream, so rows do not depend on order.
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                          static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(cue_ids[ci]),
                          static_cast<std::uint32_t>(fill), static_cast<std::uint32_t>(tol)};
        Rng rng(seq);
        const SystemDecision decision = sys.retrieve(cue, tol, rng);

        RetrievalRow row;
        row.cue_id = cue_ids[ci];
        row.true_label = inst.label;
        row.fill_pct = fill;
        row.tolerance = tol;
        row.selected = decision.selected;
        if (decision.retrieved) {
          row.features = setup.quantizer.dequantize(*decision.retrieved, rows);
        }
        rows_out[(ci * cfg.fills.size() + fi) * cfg.tolerances.size() + ti] = std::move(row);
      }
    }
  }
  return rows_out;
}

std::vector<RetrievalRow> experiment_occlusion(const Dataset& memory, const Dataset& cues,
                                               RetrievalConfig cfg) {
  if (cfg.tolerances == std::vector<std::size_t>{0}) cfg.tolerances = {0, 1, 2, 3};
  return experiment_retrieval(memory, cues, cfg);
}

RunMetadata method_metadata() {
  return {
      {"version", kArtifactVersion},
      {"quantizer", "per-feature min/max over the train role, round half up, clamped"},
      {"value_index", "0-based"},
      {"register_averaging", "unweighted mean over classes"},
      {"fold_averaging", "unweighted mean over folds (fold=mean rows)"},
      {"undefined_ratio", "reported as 1.0 and counted in the undefined column"},
      {"filter_tie_break", "smallest class id"},
  };
}

void write_metadata(std::ostream& out, const RunMetadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
}

void write_sweep_csv(std::ostream& out, const std::string& key_column,
                     const std::vector<SweepRow>& rows, const RunMetadata& meta) {
  write_metadata(out, meta);
  out << "fold," << key_column
      << ",entropy,reg_precision,reg_recall,sys_precision,sys_recall,accepting_avg,undefined\n";
  for (const SweepRow& r : rows) {
    out << (r.fold == kMeanFold ? std::string("mean") : std::to_string(r.fold)) << ','
        << r.key << ',' << format_real(r.entropy) << ',' << format_real(r.reg_precision) << ','
        << format_real(r.reg_recall) << ',' << format_real(r.sys_precision) << ','
        << format_real(r.sys_recall) << ',' << format_real(r.accepting_avg) << ','
        << r.undefined << '\n';
  }
}

void write_retrieval_csv(std::ostream& out, std::size_t n, const std::vector<RetrievalRow>& rows,
                         const RunMetadata& meta) {
  write_metadata(out, meta);
  out << "cue_id,true_label,fill_pct,tolerance,selected_label,accepted";
  for (std::size_t i = 0; i < n; ++i) out << ",f" << i;
  out << '\n';
  for (const RetrievalRow& r : rows) {
    out << r.cue_id << ',' << r.true_label << ',' << r.fill_pct << ',' << r.tolerance << ','
        << (r.selected ? std::to_string(*r.selected) : std::string("unknown")) << ','
        << (r.selected ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      out << ',';
      if (!r.features.empty()) out << format_feature(r.features[i]);
    }
    out << '\n';
  }
}

}  // namespace eam
