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

#include "eam/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "eam/dataset.hpp"
#include "eam/errors.hpp"
#include "eam/experiments.hpp"

namespace eam::cli {
namespace {

namespace fs = std::filesystem;

// Raised for failures that are the input data's fault (exit status 2).
struct DataFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataOptions {
  std::string data;
  std::string meta;
  bool sidecar_quantizer = false;
};

struct Options {
  DataOptions input;
  std::string out;

  // synth
  SynthParams synth;
  std::string occluded_out;
  OcclusionParams occlusion;

  // sweeps and retrieval
  int m_min = 0;
  int m_max = 9;
  int m = 6;
  std::vector<int> folds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> fills{1, 2, 4, 8, 16, 32, 64, 100};
  std::size_t tolerance = 0;
  std::vector<std::size_t> tolerances;
  int fold = 0;
  std::uint64_t seed = 1;
  std::size_t cues_per_class = 1;
  unsigned threads = 1;
  std::string cues;
  std::string cues_meta;
};

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream s;
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? "," : "") << xs[i];
  return s.str();
}

Dataset load(const std::string& data, const std::string& meta) {
  if (!fs::exists(data)) throw DataFailure("no such file: " + data);
  std::optional<fs::path> meta_path;
  if (!meta.empty()) meta_path = meta;
  return read_dataset(data, meta_path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFailure("cannot write " + path);
  out << text;
  if (!out) throw DataFailure("write failed: " + path);
}

void add_data_options(CLI::App* cmd, DataOptions& input) {
  cmd->add_option("--data", input.data, "Feature CSV file")->required();
  cmd->add_option("--meta", input.meta, "Metadata sidecar (default: <data>.meta)");
  cmd->add_flag("--sidecar-quantizer", input.sidecar_quantizer,
                "Use quantizer bounds from the sidecar instead of fitting on the train role");
}

RunMetadata run_metadata(const std::string& command, RunMetadata params) {
  RunMetadata meta{{"command", command}};
  meta.insert(meta.end(), params.begin(), params.end());
  for (auto& kv : method_metadata()) meta.push_back(std::move(kv));
  return meta;
}

int do_synth(const Options& o, std::ostream& out) {
  const Dataset ds = synth_generate(o.synth);
  write_dataset(ds, o.out);
  out << "wrote " << ds.instances.size() << " instances to " << o.out << '\n';
  if (!o.occluded_out.empty()) {
    const Dataset occluded = synth_occlude(ds, o.occlusion);
    write_dataset(occluded, o.occluded_out);
    out << "wrote occluded cues to " << o.occluded_out << '\n';
  }
  return kExitOk;
}

int do_sweep_rows(const Options& o, std::ostream& out) {
  const Dataset ds = load(o.input.data, o.input.meta);
  RowsSweepConfig cfg;
  cfg.folds = o.folds;
  cfg.m_min = o.m_min;
  cfg.m_max = o.m_max;
  cfg.tolerance = o.tolerance;
  cfg.threads = o.threads;
  cfg.sidecar_quantizer = o.input.sidecar_quantizer;
  if (cfg.m_min > cfg.m_max) throw DomainError("--m-min must not exceed --m-max");

  const auto rows = experiment_rows_sweep(ds, cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, "m", rows,
                  run_metadata("sweep-rows", {{"data", o.input.data},
                                              {"n", std::to_string(ds.n)},
                                              {"classes", std::to_string(ds.class_count())},
                                              {"folds", join(cfg.folds)},
                                              {"m_min", std::to_string(cfg.m_min)},
                                              {"m_max", std::to_string(cfg.m_max)},
                                              {"tolerance", std::to_string(cfg.tolerance)},
                                              {"sidecar_quantizer", cfg.sidecar_quantizer ? "1" : "0"}}));
  write_text(o.out, csv.str());
  out << "wrote " << rows.size() << " rows to " << o.out << '\n';
  return kExitOk;
}

int do_sweep_fill(const Options& o, std::ostream& out) {
  const Dataset ds = load(o.input.data, o.input.meta);
  FillSweepConfig cfg;
  cfg.folds = o.folds;
  cfg.m = o.m;
  cfg.fills = o.fills;
  cfg.tolerance = o.tolerance;
  cfg.threads = o.threads;
  cfg.sidecar_quantizer = o.input.sidecar_quantizer;

  const auto rows = experiment_fill_sweep(ds, cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, "fill_pct", rows,
                  run_metadata("sweep-fill", {{"data", o.input.data},
                                              {"n", std::to_string(ds.n)},
                                              {"classes", std::to_string(ds.class_count())},
                                              {"folds", join(cfg.folds)},
                                              {"m", std::to_string(cfg.m)},
                                              {"fills", join(cfg.fills)},
                                              {"tolerance", std::to_string(cfg.tolerance)},
                                              {"sidecar_quantizer", cfg.sidecar_quantizer ? "1" : "0"}}));
  write_text(o.out, csv.str());
  out << "wrote " << rows.size() << " rows to " << o.out << '\n';
  return kExitOk;
}

int do_retrieval(const Options& o, std::ostream& out, bool occlusion) {
  const Dataset memory = load(o.input.data, o.input.meta);
  const Dataset cues = occlusion ? load(o.cues, o.cues_meta) : memory;

  RetrievalConfig cfg;
  cfg.fold = o.fold;
  cfg.m = o.m;
  cfg.fills = o.fills;
  cfg.seed = o.seed;
  cfg.cues_per_class = o.cues_per_class;
  cfg.sidecar_quantizer = o.input.sidecar_quantizer;
  if (!o.tolerances.empty()) {
    cfg.tolerances = o.tolerances;
  } else if (occlusion) {
    cfg.tolerances = {0, 1, 2, 3};
  } else {
    cfg.tolerances = {0};
  }

  const auto rows = occlusion ? experiment_occlusion(memory, cues, cfg)
                              : experiment_retrieval(memory, cues, cfg);
  RunMetadata params{{"data", o.input.data}};
  if (occlusion) params.emplace_back("cues", o.cues);
  params.insert(params.end(), {{"n", std::to_string(memory.n)},
                               {"classes", std::to_string(memory.class_count())},
                               {"fold", std::to_string(cfg.fold)},
                               {"m", std::to_string(cfg.m)},
                               {"fills", join(cfg.fills)},
                               {"tolerances", join(cfg.tolerances)},
                               {"cues_per_class", std::to_string(cfg.cues_per_class)},
                               {"seed", std::to_string(cfg.seed)},
                               {"sidecar_quantizer", cfg.sidecar_quantizer ? "1" : "0"}});
  std::ostringstream csv;
  write_retrieval_csv(csv, memory.n, rows,
                      run_metadata(occlusion ? "occlude-eval" : "retrieve", params));
  write_text(o.out, csv.str());

  const auto accepted = std::count_if(rows.begin(), rows.end(),
                                      [](const RetrievalRow& r) { return r.selected.has_value(); });
  out << "wrote " << rows.size() << " rows (" << accepted << " accepted) to " << o.out << '\n';
  return kExitOk;
}

int do_validate(const Options& o, std::ostream& out) {
  const Dataset ds = load(o.input.data, o.input.meta);
  std::map<ClassId, std::size_t> per_class;
  std::set<int> segments;
  float lo = 0.0F;
  float hi = 0.0F;
  bool first = true;
  for (const Instance& inst : ds.instances) {
    ++per_class[inst.label];
    segments.insert(inst.segment);
    for (float x : inst.features) {
      lo = first ? x : std::min(lo, x);
      hi = first ? x : std::max(hi, x);
      first = false;
    }
  }
  out << "file: " << o.input.data << '\n'
      << "alphabet: " << ds.meta.alphabet << '\n'
      << "n: " << ds.n << '\n'
      << "classes: " << ds.class_count() << '\n'
      << "instances: " << ds.instances.size() << '\n'
      << "segments used: " << segments.size() << " of " << kSegments << '\n'
      << "feature range: [" << format_feature(lo) << ", " << format_feature(hi) << "]\n"
      << "quantizer in sidecar: " << (ds.meta.quantizer ? "yes" : "no") << '\n';
  for (ClassId c = 0; c < ds.class_count(); ++c) {
    out << "  " << c << " " << ds.meta.classes[c] << ": " << per_class[c] << '\n';
  }
  const SplitAssignment split = split_for_fold(ds, 0);
  out << "fold 0 roles: train " << split.indices(Role::kTrain).size() << ", remember "
      << split.indices(Role::kRemember).size() << ", test "
      << split.indices(Role::kTest).size() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic associative memory experiments", "eam"};
  app.require_subcommand(1);
  Options o;

  const auto fill_check = CLI::IsMember(std::vector<int>(std::begin(kFillPercents),
                                                         std::end(kFillPercents)));

  auto* synth = app.add_subcommand("synth", "Write a synthetic feature dataset");
  synth->add_option("--out", o.out, "Output CSV (sidecar written next to it)")->required();
  synth->add_option("--classes", o.synth.classes, "Number of classes")
      ->check(CLI::Range(2, 10000));
  synth->add_option("--per-class", o.synth.per_class, "Instances per class")
      ->check(CLI::Range(10, 10000000));
  synth->add_option("--features", o.synth.n, "Feature count n")->check(CLI::Range(1, 100000));
  synth->add_option("--separation", o.synth.separation, "Noise scale around class centroids")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", o.synth.seed, "Generator seed");
  synth->add_option("--occluded-out", o.occluded_out,
                    "Also write an occluded copy of the dataset here");
  synth->add_option("--occluded-features", o.occlusion.features,
                    "Trailing features perturbed in the occluded copy");
  synth->add_option("--occlusion-strength", o.occlusion.strength,
                    "Noise scale added to occluded features")
      ->check(CLI::NonNegativeNumber);

  auto* rows = app.add_subcommand("sweep-rows", "Precision/recall/entropy over register sizes 2^m");
  add_data_options(rows, o.input);
  rows->add_option("--m-min", o.m_min, "Smallest m")->check(CLI::Range(0, 9));
  rows->add_option("--m-max", o.m_max, "Largest m")->check(CLI::Range(0, 9));
  rows->add_option("--folds", o.folds, "Folds to run")->delimiter(',')->check(CLI::Range(0, 9));
  rows->add_option("--tolerance", o.tolerance, "Misses allowed during recognition");
  rows->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  rows->add_option("--out", o.out, "Output CSV")->default_val("rows_sweep.csv");

  auto* fill = app.add_subcommand("sweep-fill", "Precision/recall/entropy over remembered fractions");
  add_data_options(fill, o.input);
  fill->add_option("--m", o.m, "Rows are 2^m")->check(CLI::Range(0, 9));
  fill->add_option("--fills", o.fills, "Fill percentages")->delimiter(',')->check(fill_check);
  fill->add_option("--folds", o.folds, "Folds to run")->delimiter(',')->check(CLI::Range(0, 9));
  fill->add_option("--tolerance", o.tolerance, "Misses allowed during recognition");
  fill->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  fill->add_option("--out", o.out, "Output CSV")->default_val("fill_sweep.csv");

  auto add_retrieval_options = [&](CLI::App* cmd) {
    add_data_options(cmd, o.input);
    cmd->add_option("--m", o.m, "Rows are 2^m")->check(CLI::Range(0, 9));
    cmd->add_option("--fills", o.fills, "Fill percentages")->delimiter(',')->check(fill_check);
    cmd->add_option("--fold", o.fold, "Fold providing the split")->check(CLI::Range(0, 9));
    cmd->add_option("--tolerances", o.tolerances, "Tolerances to sweep")->delimiter(',');
    cmd->add_option("--seed", o.seed, "Sampling seed");
    cmd->add_option("--cues-per-class", o.cues_per_class, "Cues per class (0 = all test cues)");
  };

  auto* retrieve = app.add_subcommand("retrieve", "Retrieve test cues at each fill level");
  add_retrieval_options(retrieve);
  retrieve->add_option("--out", o.out, "Output CSV")->default_val("retrieval.csv");

  auto* occlude = app.add_subcommand("occlude-eval", "Retrieve occluded cues over a tolerance sweep");
  add_retrieval_options(occlude);
  occlude->add_option("--cues", o.cues, "Occluded cue feature CSV")->required();
  occlude->add_option("--cues-meta", o.cues_meta, "Sidecar for the cue file");
  occlude->add_option("--out", o.out, "Output CSV")->default_val("occlusion.csv");

  auto* validate = app.add_subcommand("validate", "Check a dataset and print a summary");
  add_data_options(validate, o.input);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "eam: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (synth->parsed()) return do_synth(o, out);
    if (rows->parsed()) return do_sweep_rows(o, out);
    if (fill->parsed()) return do_sweep_fill(o, out);
    if (retrieve->parsed()) return do_retrieval(o, out, false);
    if (occlude->parsed()) return do_retrieval(o, out, true);
    if (validate->parsed()) return do_validate(o, out);
  } catch (const ParseError& e) {
    err << "eam: " << e.what() << '\n';
    return kExitData;
  } catch (const DataFailure& e) {
    err << "eam: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "eam: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eam::cli
