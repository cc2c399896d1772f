// Copyright 2026 The Typology Authors. All Rights Reserved.
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


// Drives the installed command-line tool end to end.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TYPOLOGY_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("typology-cli-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string fixture(const std::string& name) {
  return std::string(TYPOLOGY_FIXTURE_DIR) + "/" + name;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Space-joined FORM columns of every sentence.
std::vector<std::string> token_lines(const fs::path& conllu) {
  std::vector<std::string> out;
  std::istringstream in(slurp(conllu));
  std::string line, cur;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      continue;
    }
    if (line[0] == '#') continue;
    const auto a = line.find('\t');
    const auto b = line.find('\t', a + 1);
    if (!cur.empty()) cur += ' ';
    cur += line.substr(a + 1, b - a - 1);
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

const fs::path& toy_dir() {
  static const fs::path dir = [] {
    const fs::path d = scratch("toy");
    REQUIRE(run("toygen --sentences 400 --seed 3 --out " + q(d)).code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("SOV polypersonal generation of the figure 1 sentence") {
    const fs::path d = scratch("fig1");
    const auto r = run("generate " + fixture("figure1.conllu") +
                       " --order sov --agreement full --case none --out " + q(d));
    REQUIRE(r.code == 0);
    const auto lines = token_lines(d / "corpus.conllu");
    REQUIRE(lines.size() == 1);
    // order of the golden SOV row, suffixes of the golden polypersonal row
    CHECK(lines[0] == "they the broker them tookkarker out frequently for lunch saykon .");
    CHECK(slurp(d / "corpus.conllu").find("# text = " + lines[0]) != std::string::npos);
  }

  TEST_CASE("identity language leaves tokens untouched") {
    for (const fs::path& in : {fs::path(fixture("figure1.conllu")), fs::path(fixture("differences.conllu")),
                               toy_dir() / "toy.conllu"}) {
      const fs::path d = scratch("identity");
      REQUIRE(run("generate " + q(in) + " --order unchanged --agreement none --case none --out " + q(d)).code == 0);
      CHECK(token_lines(d / "corpus.conllu") == token_lines(in));
    }
  }

  TEST_CASE("flexible generation is reproducible") {
    const fs::path a = scratch("flex-a"), b = scratch("flex-b");
    const std::string args = "generate " + q(toy_dir() / "toy.conllu") +
                             " --order flexible --seed 7 --agreement full --case syncretic --threads 3 --out ";
    REQUIRE(run(args + q(a)).code == 0);
    REQUIRE(run(args + q(b)).code == 0);
    for (const char* f : {"corpus.conllu", "instances.jsonl", "manifest.json", "run.conf"})
      CHECK(slurp(a / f) == slurp(b / f));
    const fs::path c = scratch("flex-c");
    REQUIRE(run("generate --config " + q(a / "run.conf") + " --out " + q(c)).code == 0);
    CHECK(slurp(a / "instances.jsonl") == slurp(c / "instances.jsonl"));
    CHECK(slurp(a / "manifest.json") == slurp(c / "manifest.json"));
  }

  TEST_CASE("manifest hashes are git blob ids") {
    const fs::path d = scratch("manifest");
    REQUIRE(run("generate " + fixture("figure1.conllu") + " --order vso --out " + q(d)).code == 0);
    const json m = json::parse(slurp(d / "manifest.json"));
    CHECK(m["command"] == "generate");
    CHECK(m["config"]["order"] == "vso");
    REQUIRE(m["outputs"].size() == 3);
    // empty file id is fixed by git itself
    const fs::path e = scratch("manifest-empty");
    std::ofstream(e / "empty.conllu").close();
    REQUIRE(run("generate " + q(e / "empty.conllu") + " --out " + q(e / "out")).code == 0);
    const json me = json::parse(slurp(e / "out" / "manifest.json"));
    CHECK(me["inputs"][0]["git_sha1"] == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    if (std::system("git --version >/dev/null 2>&1") == 0) {
      for (const json& o : m["outputs"]) {
        const fs::path f = d / o["path"].get<std::string>();
        FILE* p = popen(("git hash-object " + q(f)).c_str(), "r");
        char buf[64] = {};
        REQUIRE(fgets(buf, sizeof buf, p) != nullptr);
        pclose(p);
        CHECK(std::string(buf).substr(0, 40) == o["git_sha1"].get<std::string>());
      }
    }
  }

  TEST_CASE("stats table and json") {
    const fs::path sov = scratch("stats-sov"), svo = scratch("stats-svo");
    REQUIRE(run("generate " + q(toy_dir() / "toy.conllu") + " --order sov --out " + q(sov)).code == 0);
    REQUIRE(run("generate " + q(toy_dir() / "toy.conllu") + " --order svo --out " + q(svo)).code == 0);
    const auto js = run("stats --json " + q(sov / "instances.jsonl"));
    const auto jv = run("stats --json " + q(svo / "instances.jsonl"));
    REQUIRE(js.code == 0);
    const json s = json::parse(js.out), v = json::parse(jv.out);
    CHECK(s["subject_attractor_percent"].get<double>() > v["subject_attractor_percent"].get<double>());

    const auto table = run("stats " + q(sov / "instances.jsonl"));
    REQUIRE(table.code == 0);
    std::istringstream lines(table.out);
    std::string header, row, src;
    std::getline(lines, header);
    std::getline(lines, row);
    std::istringstream cells(row);
    long n;
    double trans, sa, oa, noa;
    cells >> src >> n >> trans >> sa >> oa >> noa;
    CHECK(n == s["instances"].get<long>());
    CHECK(trans == doctest::Approx(100 * s["transitive_fraction"].get<double>()).epsilon(0.005));
    CHECK(sa == doctest::Approx(s["subject_attractor_percent"].get<double>()).epsilon(0.005));
    CHECK(oa == doctest::Approx(s["object_attractor_percent"].get<double>()).epsilon(0.005));
    CHECK(noa == doctest::Approx(s["non_object_attractor_percent"].get<double>()).epsilon(0.005));

    const fs::path intr = scratch("stats-intr");
    REQUIRE(run("toygen --sentences 100 --transitive-fraction 0 --out " + q(intr)).code == 0);
    REQUIRE(run("generate " + q(intr / "toy.conllu") + " --order sov --agreement full --out " + q(intr / "g")).code == 0);
    const json i = json::parse(run("stats --json " + q(intr / "g" / "instances.jsonl")).out);
    CHECK(i["object_attractor_percent"] == 0.0);
    CHECK(i["transitive"] == 0);
  }

  TEST_CASE("train several seeds and evaluate by test category") {
    const fs::path d = scratch("train");
    REQUIRE(run("generate " + q(toy_dir() / "toy.conllu") + " --order sov --agreement full --out " + q(d / "g")).code == 0);
    REQUIRE(run("split " + q(d / "g" / "instances.jsonl") + " --poverty-of-stimulus --out " + q(d / "s")).code == 0);
    for (const char* f : {"train.jsonl", "dev.jsonl", "test_object_attractor.jsonl",
                          "test_object_non_attractor.jsonl", "test_non_object_attractor.jsonl"})
      CHECK(fs::exists(d / "s" / f));
    const std::string small = " --embedding-dim 8 --hidden 8 --mlp1 6 --mlp2 4 --epochs 2 --quiet";
    const auto t = run("train --train " + q(d / "s" / "train.jsonl") + " --dev " + q(d / "s" / "dev.jsonl") +
                       " --seeds 4 --threads 2" + small + " --out " + q(d / "runs"));
    REQUIRE(t.code == 0);
    const json summary = json::parse(slurp(d / "runs" / "summary.json"));
    CHECK(summary["runs"] == 4);
    CHECK(summary["per_run"].size() == 4);
    double mean = 0;
    for (const json& r : summary["per_run"]) mean += r["subject_accuracy"].get<double>() / 4;
    CHECK(summary["subject_accuracy"]["mean"].get<double>() == doctest::Approx(mean));
    CHECK(t.out.find("mean±sd") != std::string::npos);
    int rows = 0;
    for (int s = 1; s <= 4; ++s) rows += t.out.find("seed-" + std::to_string(s)) != std::string::npos;
    CHECK(rows == 4);

    // seeds trained in parallel match seeds trained alone
    REQUIRE(run("train --train " + q(d / "s" / "train.jsonl") + " --dev " + q(d / "s" / "dev.jsonl") + " --seed 3 --seeds 1" + small +
                " --out " + q(d / "alone")).code == 0);
    CHECK(slurp(d / "alone" / "seed-3" / "model.txt") == slurp(d / "runs" / "seed-3" / "model.txt"));

    const fs::path all = d / "tests.jsonl";
    {
      // concatenate the three test files under one header
      std::ofstream out(all);
      bool header = false;
      for (const char* f : {"test_object_attractor.jsonl", "test_object_non_attractor.jsonl",
                            "test_non_object_attractor.jsonl"}) {
        std::istringstream in(slurp(d / "s" / f));
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
          if (first && header) {
            first = false;
            continue;
          }
          first = false;
          header = true;
          out << line << "\n";
        }
      }
    }
    const auto e = run("eval --model " + q(d / "runs" / "seed-1" / "model.txt") + " --model " +
                       q(d / "runs" / "seed-2" / "model.txt") + " --test " + q(all) +
                       " --by test-category --out " + q(d / "eval"));
    REQUIRE(e.code == 0);
    for (const char* cat : {"object_attractor", "object_non_attractor", "non_object_attractor"})
      CHECK(e.out.find(cat) != std::string::npos);
    const json es = json::parse(slurp(d / "eval" / "summary.json"));
    CHECK(es["object_attractor"]["runs"] == 2);
    CHECK(fs::exists(d / "eval" / "model-2.predictions.jsonl"));
  }

  TEST_CASE("exit codes") {
    const fs::path d = scratch("codes");
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("generate --order sideways " + fixture("figure1.conllu") + " --out " + q(d)).code == 1);
    CHECK(run("generate /nonexistent/in.conllu --out " + q(d)).code == 2);
    CHECK(run("generate " + fixture("figure1.conllu") + " --out /proc/forbidden").code == 2);
    std::ofstream(d / "empty.jsonl").close();
    CHECK(run("stats " + q(d / "empty.jsonl")).code == 3);
    CHECK(run("split " + q(d / "empty.jsonl") + " --out " + q(d / "s")).code == 3);

    REQUIRE(run("generate " + q(toy_dir() / "toy.conllu") + " --order svo --out " + q(d / "g")).code == 0);
    const std::string small = " --embedding-dim 8 --hidden 8 --mlp1 6 --mlp2 4 --quiet";
    REQUIRE(run("train --train " + q(d / "g" / "instances.jsonl") + " --seeds 1 --epochs 1" + small +
                " --out " + q(d / "r")).code == 0);
    CHECK(run("eval --model " + q(d / "r" / "seed-1" / "model.txt") + " --test " + q(d / "empty.jsonl")).code == 3);
    CHECK(run("train --train " + q(d / "empty.jsonl") + " --out " + q(d / "r2")).code == 3);
    // a learning rate this large overflows the parameters within a few steps
    CHECK(run("train --train " + q(d / "g" / "instances.jsonl") + " --seeds 1 --epochs 3 --lr 1e38" + small +
              " --out " + q(d / "nan")).code == 4);
  }
}
