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

#include "eam/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string_view>

#include <json.hpp>

#include "eam/errors.hpp"

namespace eam {
namespace {

using json = nlohmann::json;

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

DatasetMeta read_meta(const std::filesystem::path& path, std::size_t& n) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open metadata sidecar");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
  DatasetMeta meta;
  try {
    n = doc.at("n").get<std::size_t>();
    meta.alphabet = doc.at("alphabet").get<std::string>();
    meta.classes = doc.at("classes").get<std::vector<std::string>>();
    if (doc.contains("quantizer")) {
      const auto& q = doc.at("quantizer");
      meta.quantizer = Quantizer(q.at("lo").get<std::vector<float>>(),
                                 q.at("hi").get<std::vector<float>>());
    }
    if (doc.contains("seed")) meta.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  if (n == 0) throw ParseError(path.string(), 0, "n must be positive");
  if (meta.alphabet != "emnist-47" && meta.alphabet != "emnist-36" &&
      meta.alphabet != "synthetic") {
    throw ParseError(path.string(), 0, "unknown alphabet '" + meta.alphabet + "'");
  }
  if (meta.classes.empty()) throw ParseError(path.string(), 0, "no classes listed");
  if (meta.quantizer && meta.quantizer->n() != n) {
    throw ParseError(path.string(), 0, "quantizer size does not match n");
  }
  return meta;
}

}  // namespace

void Dataset::check() const {
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Instance& inst = instances[k];
    if (inst.features.size() != n) {
      throw DomainError("instance " + std::to_string(k) + " has " +
                        std::to_string(inst.features.size()) + " features, expected " +
                        std::to_string(n));
    }
    if (inst.label >= class_count()) {
      throw DomainError("instance " + std::to_string(k) + " label out of range");
    }
    if (inst.segment < 0 || inst.segment >= kSegments) {
      throw DomainError("instance " + std::to_string(k) + " segment out of range");
    }
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& data) {
  std::filesystem::path meta = data;
  meta.replace_extension(".meta");
  return meta;
}

std::string format_feature(float x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(x));
  return buf;
}

Dataset read_dataset(const std::filesystem::path& data,
                     std::optional<std::filesystem::path> meta) {
  Dataset ds;
  ds.meta = read_meta(meta.value_or(sidecar_path(data)), ds.n);

  const std::string file = data.string();
  std::ifstream in(data);
  if (!in) throw ParseError(file, 0, "cannot open dataset");

  std::string line;
  std::size_t line_no = 0;
  auto strip_cr = [&line] {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  if (!std::getline(in, line)) throw ParseError(file, 1, "missing header");
  ++line_no;
  strip_cr();
  {
    const auto header = split_csv_line(line);
    if (header.size() != ds.n + 2 || header[0] != "label" || header[1] != "segment") {
      throw ParseError(file, line_no,
                       "header must be label,segment,f0..f" + std::to_string(ds.n - 1));
    }
    for (std::size_t i = 0; i < ds.n; ++i) {
      if (header[i + 2] != "f" + std::to_string(i)) {
        throw ParseError(file, line_no, "unexpected header column '" +
                                            std::string(header[i + 2]) + "'");
      }
    }
  }

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != ds.n + 2) {
      throw ParseError(file, line_no,
                       "expected " + std::to_string(ds.n + 2) + " columns, found " +
                           std::to_string(fields.size()));
    }
    Instance inst;
    if (!parse_number(fields[0], inst.label)) {
      throw ParseError(file, line_no, "bad label '" + std::string(fields[0]) + "'");
    }
    if (inst.label >= ds.class_count()) {
      throw ParseError(file, line_no, "label " + std::to_string(inst.label) +
                                          " out of range for " +
                                          std::to_string(ds.class_count()) + " classes");
    }
    if (!parse_number(fields[1], inst.segment) || inst.segment < 0 ||
        inst.segment >= kSegments) {
      throw ParseError(file, line_no,
                       "segment must be an integer in [0, 99], got '" +
                           std::string(fields[1]) + "'");
    }
    inst.features.resize(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) {
      if (!parse_number(fields[i + 2], inst.features[i]) ||
          !std::isfinite(inst.features[i])) {
        throw ParseError(file, line_no, "bad feature f" + std::to_string(i) + " '" +
                                            std::string(fields[i + 2]) + "'");
      }
    }
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& data,
                   std::optional<std::filesystem::path> meta) {
  dataset.check();

  std::ofstream out(data, std::ios::binary);
  if (!out) throw ParseError(data.string(), 0, "cannot open for writing");
  out << "label,segment";
  for (std::size_t i = 0; i < dataset.n; ++i) out << ",f" << i;
  out << '\n';
  for (const Instance& inst : dataset.instances) {
    out << inst.label << ',' << inst.segment;
    for (float x : inst.features) out << ',' << format_feature(x);
    out << '\n';
  }
  if (!out) throw ParseError(data.string(), 0, "write failed");

  json doc;
  doc["n"] = dataset.n;
  doc["alphabet"] = dataset.meta.alphabet;
  doc["classes"] = dataset.meta.classes;
  if (dataset.meta.quantizer) {
    doc["quantizer"] = {{"lo", dataset.meta.quantizer->lo()},
                        {"hi", dataset.meta.quantizer->hi()}};
  }
  if (dataset.meta.seed) doc["seed"] = *dataset.meta.seed;

  const auto meta_path = meta.value_or(sidecar_path(data));
  std::ofstream mout(meta_path, std::ios::binary);
  if (!mout) throw ParseError(meta_path.string(), 0, "cannot open for writing");
  mout << doc.dump(2) << '\n';
}

const char* role_name(Role role) noexcept {
  switch (role) {
    case Role::kTrain: return "train";
    case Role::kRemember: return "remember";
    case Role::kTest: return "test";
  }
  return "?";
}

Role role_for_segment(int segment, int fold) {
  if (fold < 0 || fold >= kFolds) throw DomainError("fold must be in [0, 9]");
  if (segment < 0 || segment >= kSegments) throw DomainError("segment must be in [0, 99]");
  const int offset = (segment - kTestBuckets * fold + kSegments) % kSegments;
  if (offset < kTestBuckets) return Role::kTest;
  if (offset < kTestBuckets + kRememberBuckets) return Role::kRemember;
  return Role::kTrain;
}

std::vector<std::size_t> SplitAssignment::indices(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (roles[k] == role) out.push_back(k);
  }
  return out;
}

SplitAssignment split_for_fold(const Dataset& dataset, int fold) {
  SplitAssignment split;
  split.fold = fold;
  split.roles.reserve(dataset.instances.size());
  for (const Instance& inst : dataset.instances) {
    split.roles.push_back(role_for_segment(inst.segment, fold));
  }
  return split;
}

std::vector<std::size_t> take_fraction(const Dataset& dataset,
                                       std::span<const std::size_t> indices, int percent) {
  if (std::find(std::begin(kFillPercents), std::end(kFillPercents), percent) ==
      std::end(kFillPercents)) {
    throw DomainError("unsupported fill percentage " + std::to_string(percent));
  }
  std::map<ClassId, std::size_t> per_class;
  for (std::size_t k : indices) ++per_class[dataset.instances.at(k).label];
  std::map<ClassId, std::size_t> quota;
  for (const auto& [label, count] : per_class) {
    quota[label] = (static_cast<std::size_t>(percent) * count + 99) / 100;
  }
  std::vector<std::size_t> out;
  for (std::size_t k : indices) {
    std::size_t& left = quota[dataset.instances[k].label];
    if (left > 0) {
      out.push_back(k);
      --left;
    }
  }
  return out;
}

Dataset synth_generate(const SynthParams& params) {
  if (params.classes < 2) throw DomainError("synthetic data needs at least two classes");
  if (params.per_class < 10) throw DomainError("synthetic data needs at least 10 per class");
  if (params.n == 0) throw DomainError("synthetic data needs at least one feature");
  if (!(params.separation >= 0.0)) throw DomainError("separation must be non-negative");

  Rng rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Centroids are redrawn while they land closer than this to an earlier one;
  // the expected distance between uniform points in [0,1]^n is about sqrt(n/6).
  const double min_distance = 0.5 * std::sqrt(static_cast<double>(params.n) / 6.0);
  constexpr int kMaxAttempts = 100;

  std::vector<std::vector<double>> centroids;
  for (std::size_t c = 0; c < params.classes; ++c) {
    std::vector<double> centroid(params.n);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      for (double& x : centroid) x = unit(rng);
      const bool far_enough = std::all_of(
          centroids.begin(), centroids.end(), [&](const std::vector<double>& other) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < params.n; ++i) {
              d2 += (centroid[i] - other[i]) * (centroid[i] - other[i]);
            }
            return std::sqrt(d2) >= min_distance;
          });
      if (far_enough) break;
    }
    centroids.push_back(centroid);
  }

  Dataset ds;
  ds.n = params.n;
  ds.meta.alphabet = "synthetic";
  for (std::size_t c = 0; c < params.classes; ++c) {
    ds.meta.classes.push_back("c" + std::to_string(c));
  }
  ds.meta.seed = params.seed;

  std::normal_distribution<double> noise(0.0, params.separation);
  ds.instances.reserve(params.classes * params.per_class);
  for (std::size_t k = 0; k < params.per_class; ++k) {
    for (std::size_t c = 0; c < params.classes; ++c) {
      Instance inst;
      inst.label = c;
      inst.segment = static_cast<int>(k % kSegments);
      inst.features.resize(params.n);
      for (std::size_t i = 0; i < params.n; ++i) {
        const double jitter = params.separation > 0.0 ? noise(rng) : 0.0;
        inst.features[i] = static_cast<float>(centroids[c][i] + jitter);
      }
      ds.instances.push_back(std::move(inst));
    }
  }
  return ds;
}

Dataset synth_occlude(const Dataset& dataset, const OcclusionParams& params) {
  if (params.features > dataset.n) throw DomainError("cannot occlude more features than n");
  if (!(params.strength >= 0.0)) throw DomainError("occlusion strength must be non-negative");
  Dataset out = dataset;
  Rng rng(params.seed);
  std::normal_distribution<double> noise(0.0, params.strength);
  for (Instance& inst : out.instances) {
    for (std::size_t i = dataset.n - params.features; i < dataset.n; ++i) {
      const double jitter = params.strength > 0.0 ? noise(rng) : 0.0;
      inst.features[i] = static_cast<float>(inst.features[i] + jitter);
    }
  }
  return out;
}

}  // namespace eam
