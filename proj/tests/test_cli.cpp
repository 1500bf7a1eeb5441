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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "eam/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  std::string out;
  std::string err;

  Workspace() {
    dir = fs::temp_directory_path() / ("eam_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(std::vector<std::string> args) {
    std::ostringstream o;
    std::ostringstream e;
    const int status = eam::cli::run(args, o, e);
    out = o.str();
    err = e.str();
    return status;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Non-comment lines of a result file, header included.
  std::vector<std::string> table(const std::string& name) const {
    std::vector<std::string> lines;
    std::istringstream in(read(name));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
  }

  void synth(int classes = 4, int per_class = 100) {
    REQUIRE(run({"synth", "--out", path("d.csv"), "--classes", std::to_string(classes),
                 "--per-class", std::to_string(per_class), "--separation", "0.03", "--seed",
                 "5", "--occluded-out", path("occ.csv")}) == 0);
  }
};

}  // namespace

TEST_CASE("synth then validate") {
  Workspace ws;
  ws.synth();
  CHECK(fs::exists(ws.path("d.meta")));
  CHECK(fs::exists(ws.path("occ.meta")));
  REQUIRE(ws.run({"validate", "--data", ws.path("d.csv")}) == 0);
  CHECK(ws.out.find("instances: 400") != std::string::npos);
  CHECK(ws.out.find("n: 64") != std::string::npos);
  CHECK(ws.out.find("fold 0 roles: train 228, remember 132, test 40") != std::string::npos);
}

TEST_CASE("sweep-rows emits one averaged row per m") {
  Workspace ws;
  ws.synth();
  REQUIRE(ws.run({"sweep-rows", "--data", ws.path("d.csv"), "--m-min", "0", "--m-max", "9",
                  "--out", ws.path("rows.csv")}) == 0);
  const auto lines = ws.table("rows.csv");
  REQUIRE(!lines.empty());
  CHECK(lines[0] ==
        "fold,m,entropy,reg_precision,reg_recall,sys_precision,sys_recall,accepting_avg,undefined");
  const auto means = std::count_if(lines.begin(), lines.end(),
                                   [](const std::string& l) { return l.rfind("mean,", 0) == 0; });
  CHECK(means == 10);
  CHECK(lines.size() == 1 + 10 * 11);

  const std::string text = ws.read("rows.csv");
  CHECK(text.find("# command: sweep-rows") != std::string::npos);
  CHECK(text.find("# m_max: 9") != std::string::npos);
  CHECK(text.find("# version: ") != std::string::npos);
}

TEST_CASE("sweep-fill honours the fold and fill lists") {
  Workspace ws;
  ws.synth();
  REQUIRE(ws.run({"sweep-fill", "--data", ws.path("d.csv"), "--m", "5", "--folds", "0,4",
                  "--fills", "1,8,100", "--out", ws.path("fill.csv")}) == 0);
  const auto lines = ws.table("fill.csv");
  CHECK(lines[0].rfind("fold,fill_pct,entropy,", 0) == 0);
  CHECK(lines.size() == 1 + 3 * 3);
  CHECK(lines[1].rfind("0,1,", 0) == 0);
  CHECK(lines[2].rfind("4,1,", 0) == 0);
  CHECK(lines[3].rfind("mean,1,", 0) == 0);
}

TEST_CASE("retrieve writes one row per cue and fill") {
  Workspace ws;
  ws.synth();
  REQUIRE(ws.run({"retrieve", "--data", ws.path("d.csv"), "--fills", "1,2,4,8,16,32,64,100",
                  "--cues-per-class", "2", "--out", ws.path("r.csv")}) == 0);
  const auto lines = ws.table("r.csv");
  CHECK(lines.size() == 1 + 4 * 2 * 8);
  CHECK(lines[0].rfind("cue_id,true_label,fill_pct,tolerance,selected_label,accepted,f0,", 0) == 0);
}

TEST_CASE("occlude-eval sweeps tolerances 0 to 3 by default") {
  Workspace ws;
  ws.synth();
  REQUIRE(ws.run({"occlude-eval", "--data", ws.path("d.csv"), "--cues", ws.path("occ.csv"),
                  "--fills", "16,100", "--out", ws.path("o.csv")}) == 0);
  const auto lines = ws.table("o.csv");
  CHECK(lines.size() == 1 + 4 * 2 * 4);
  CHECK(ws.read("o.csv").find("# tolerances: 0,1,2,3") != std::string::npos);
}

TEST_CASE("identical arguments give identical bytes") {
  Workspace ws;
  ws.synth();
  for (const char* cmd : {"sweep-rows", "retrieve"}) {
    std::vector<std::string> args{cmd, "--data", ws.path("d.csv"), "--out", ws.path("a.csv")};
    REQUIRE(ws.run(args) == 0);
    const std::string first = ws.read("a.csv");
    REQUIRE(ws.run(args) == 0);
    CHECK(ws.read("a.csv") == first);
  }
  // Regenerating the dataset is also byte-stable.
  const std::string data = ws.read("d.csv");
  ws.synth();
  CHECK(ws.read("d.csv") == data);
}

TEST_CASE("usage errors exit with 1") {
  Workspace ws;
  ws.synth();
  CHECK(ws.run({"sweep-rows", "--data", ws.path("d.csv"), "--bogus"}) == 1);
  CHECK(ws.err.find("Usage") != std::string::npos);
  CHECK(ws.run({}) == 1);
  CHECK(ws.run({"frobnicate"}) == 1);
  CHECK(ws.run({"sweep-rows", "--data", ws.path("d.csv"), "--m-max", "10"}) == 1);
  CHECK(ws.run({"sweep-rows", "--data", ws.path("d.csv"), "--m-min", "5", "--m-max", "2",
                "--out", ws.path("x.csv")}) == 1);
  CHECK(ws.run({"sweep-fill", "--data", ws.path("d.csv"), "--fills", "3"}) == 1);
  CHECK(ws.run({"synth", "--out", ws.path("s.csv"), "--classes", "1"}) == 1);
  CHECK(ws.run({"--help"}) == 0);
}

TEST_CASE("data errors exit with 2") {
  Workspace ws;
  CHECK(ws.run({"validate", "--data", ws.path("missing.csv")}) == 2);
  CHECK(ws.err.find("missing.csv") != std::string::npos);

  ws.synth();
  {
    std::ofstream bad(ws.dir / "bad.csv");
    bad << "label,segment,f0\n0,0,1\n";
  }
  fs::copy_file(ws.path("d.meta"), ws.path("bad.meta"));
  CHECK(ws.run({"validate", "--data", ws.path("bad.csv")}) == 2);
  CHECK(std::count(ws.err.begin(), ws.err.end(), '\n') == 1);

  CHECK(ws.run({"sweep-rows", "--data", ws.path("d.csv"), "--out",
                ws.path("no/such/dir/rows.csv")}) == 2);
}
