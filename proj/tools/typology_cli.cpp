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


// typology: command-line front end over the C API.
//
//   typology toygen   --sentences 5000 --out toy/
//   typology generate toy/toy.conllu --order sov --agreement full --out sov/
//   typology stats    sov/instances.jsonl [--json]
//   typology split    sov/instances.jsonl --poverty-of-stimulus --out sov/split/
//   typology train    --train sov/split/train.jsonl --dev sov/split/dev.jsonl --out runs/
//   typology eval     --model runs/seed-1/model.txt --test ... --by test-category
//
// Every subcommand accepts --config FILE with key=value lines named after the
// long options; flags given on the command line win. Commands that write an
// output directory also leave run.conf (the resolved configuration, usable
// as --config) and manifest.json (configuration plus content hashes).

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "typology/typology.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kEmpty = 3, kNumeric = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(typo_status s) {
  switch (s) {
    case TYPO_OK:
      return kOk;
    case TYPO_ERR_PARSE:
    case TYPO_ERR_IO:
      return kIo;
    case TYPO_ERR_EMPTY:
      return kEmpty;
    case TYPO_ERR_NUMERIC:
      return kNumeric;
    default:
      return kUsage;
  }
}

void check(typo_status s, const std::string& what) {
  if (s != TYPO_OK) throw Failure{exit_code(s), what + ": " + typo_last_error()};
}

struct TreebankFree {
  void operator()(typo_treebank* p) const { typo_treebank_free(p); }
};
struct InstancesFree {
  void operator()(typo_instances* p) const { typo_instances_free(p); }
};
struct ModelFree {
  void operator()(typo_model* p) const { typo_model_free(p); }
};
struct StringFree {
  void operator()(char* p) const { typo_string_free(p); }
};
using Treebank = std::unique_ptr<typo_treebank, TreebankFree>;
using Instances = std::unique_ptr<typo_instances, InstancesFree>;
using Model = std::unique_ptr<typo_model, ModelFree>;
using CString = std::unique_ptr<char, StringFree>;

std::string take_string(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

Instances load_instances(const std::string& path) {
  typo_instances* raw = nullptr;
  check(typo_instances_load(path.c_str(), &raw), "reading " + path);
  return Instances(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIo, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kIo, "cannot write " + path.string()};
    out << contents;
    out.flush();
    if (!out) throw Failure{kIo, "short write to " + path.string()};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Failure{kIo, "cannot move " + tmp.string() + " to " + path.string()};
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Failure{kIo, "cannot create directory " + dir.string()};
}

// Same digest as `git hash-object`.
std::string git_blob_sha1(const std::string& contents) {
  const std::string header = "blob " + std::to_string(contents.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || !EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) ||
      !EVP_DigestUpdate(ctx.get(), header.data(), header.size()) ||
      !EVP_DigestUpdate(ctx.get(), contents.data(), contents.size()) ||
      !EVP_DigestFinal_ex(ctx.get(), digest, &len))
    throw Failure{kUsage, "SHA-1 unavailable"};
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// Resolved settings of one run, in the order they were declared.
using Config = std::vector<std::pair<std::string, std::string>>;

void write_run_files(const fs::path& dir, const std::string& command, const Config& config,
                     const std::vector<std::string>& inputs,
                     const std::vector<std::string>& outputs) {
  std::string conf;
  json cfg = json::object();
  for (const auto& [k, v] : config) {
    conf += k + "=" + v + "\n";
    cfg[k] = v;
  }
  write_file(dir / "run.conf", conf);
  json in = json::array();
  for (const std::string& p : inputs) {
    const std::string data = read_file(p);
    in.push_back({{"path", p}, {"bytes", data.size()}, {"git_sha1", git_blob_sha1(data)}});
  }
  json out = json::array();
  for (const std::string& name : outputs) {
    const std::string data = read_file((dir / name).string());
    out.push_back({{"path", name}, {"bytes", data.size()}, {"git_sha1", git_blob_sha1(data)}});
  }
  const json manifest = {{"tool", "typology"},
                         {"version", typo_version()},
                         {"command", command},
                         {"config", cfg},
                         {"inputs", in},
                         {"outputs", out}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct MeanStd {
  double mean = 0, stdev = 0;
};

// Sample standard deviation; zero for a single run.
MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

std::string pm(const std::vector<double>& xs) {
  const MeanStd m = mean_std(xs);
  return fmt(100 * m.mean, 2) + " ± " + fmt(100 * m.stdev, 2);
}

// Accepted so that it shows up in --help; the file itself is expanded into
// arguments by expand_config() before parsing.
void add_config_option(CLI::App* sub) {
  static std::string ignored;
  sub->add_option("--config", ignored, "key=value file; command-line flags take precedence");
}

bool mentions(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const std::string& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Rewrites `sub ... --config FILE ...` into `sub --key=value ... ...`, leaving
// out keys the command line sets itself.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (file.empty() || out.size() < 2) return out;
  std::istringstream in(read_file(file));
  std::vector<std::string> injected;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Failure{kUsage, file + ":" + std::to_string(line_no) + ": expected key=value"};
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (value.empty() || mentions(out, key)) continue;
    injected.push_back("--" + key + "=" + value);
  }
  out.insert(out.begin() + 2, injected.begin(), injected.end());
  return out;
}

using Registry = std::vector<std::pair<CLI::App*, std::function<void()>>>;

// ---- toygen -------------------------------------------------------------

struct ToygenArgs {
  typo_toy_spec spec{};
  std::string lexicon;
  std::string out;
};

void add_toygen(CLI::App& app, ToygenArgs& a, Registry& reg) {
  typo_toy_spec_default(&a.spec);
  auto* sub = app.add_subcommand("toygen", "Generate a synthetic English treebank");
  add_config_option(sub);
  sub->add_option("--sentences", a.spec.sentences, "Number of sentences")->capture_default_str();
  sub->add_option("--transitive-fraction", a.spec.transitive_fraction,
                  "Target share of records with a direct object")
      ->capture_default_str();
  sub->add_option("--modifier-attractor-probability", a.spec.modifier_attractor_probability,
                  "Subject PP whose noun has the opposite number")
      ->capture_default_str();
  sub->add_option("--neutral-modifier-probability", a.spec.neutral_modifier_probability,
                  "Subject PP whose noun has the same number")
      ->capture_default_str();
  sub->add_option("--relative-clause-probability", a.spec.relative_clause_probability,
                  "Subject relative clause")
      ->capture_default_str();
  sub->add_option("--embedding-probability", a.spec.embedding_probability,
                  "Clausal complement per level")
      ->capture_default_str();
  sub->add_option("--max-depth", a.spec.max_depth, "Maximum embedding depth")->capture_default_str();
  sub->add_option("--pronoun-probability", a.spec.pronoun_probability)->capture_default_str();
  sub->add_option("--adjective-probability", a.spec.adjective_probability)->capture_default_str();
  sub->add_option("--adverb-probability", a.spec.adverb_probability)->capture_default_str();
  sub->add_option("--complementizer-probability", a.spec.complementizer_probability)
      ->capture_default_str();
  sub->add_option("--seed", a.spec.seed, "Random seed")->capture_default_str();
  sub->add_option("--lexicon", a.lexicon, "Lexicon file (lemma<TAB>pos<TAB>form)");
  sub->add_option("--out", a.out, "Output directory")->required();
  reg.emplace_back(sub, [&a] {
    typo_toy_spec spec = a.spec;
    spec.lexicon_path = a.lexicon.empty() ? nullptr : a.lexicon.c_str();
    typo_treebank* raw = nullptr;
    check(typo_toygen(&spec, &raw), "toygen");
    Treebank tb(raw);
    make_dir(a.out);
    check(typo_treebank_save(tb.get(), (fs::path(a.out) / "toy.conllu").c_str()), "writing corpus");
    const Config cfg = {{"sentences", std::to_string(a.spec.sentences)},
                        {"transitive-fraction", num(a.spec.transitive_fraction)},
                        {"modifier-attractor-probability", num(a.spec.modifier_attractor_probability)},
                        {"neutral-modifier-probability", num(a.spec.neutral_modifier_probability)},
                        {"relative-clause-probability", num(a.spec.relative_clause_probability)},
                        {"embedding-probability", num(a.spec.embedding_probability)},
                        {"max-depth", std::to_string(a.spec.max_depth)},
                        {"pronoun-probability", num(a.spec.pronoun_probability)},
                        {"adjective-probability", num(a.spec.adjective_probability)},
                        {"adverb-probability", num(a.spec.adverb_probability)},
                        {"complementizer-probability", num(a.spec.complementizer_probability)},
                        {"seed", std::to_string(a.spec.seed)},
                        {"lexicon", a.lexicon}};
    std::vector<std::string> inputs;
    if (!a.lexicon.empty()) inputs.push_back(a.lexicon);
    write_run_files(a.out, "toygen", cfg, inputs, {"toy.conllu"});
    std::cout << "wrote " << typo_treebank_size(tb.get()) << " sentences to "
              << (fs::path(a.out) / "toy.conllu").string() << "\n";
  });
}

// ---- generate -----------------------------------------------------------

struct GenerateArgs {
  std::string input;
  std::string order = "unchanged";
  std::string case_system = "none";
  std::string agreement = "none";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

void add_generate(CLI::App& app, GenerateArgs& a, Registry& reg) {
  auto* sub = app.add_subcommand("generate", "Compile a CoNLL-U treebank into a synthetic language");
  add_config_option(sub);
  sub->add_option("input,--input", a.input, "Input CoNLL-U file")->required();
  sub->add_option("--order", a.order, "Core word order")
      ->check(CLI::IsMember({"svo", "sov", "vos", "vso", "osv", "ovs", "flexible", "unchanged"}))
      ->capture_default_str();
  sub->add_option("--case", a.case_system, "Case system")
      ->check(CLI::IsMember({"none", "unambiguous", "syncretic", "argument-only"}))
      ->capture_default_str();
  sub->add_option("--agreement", a.agreement, "Polypersonal verb agreement")
      ->check(CLI::IsMember({"full", "none"}))
      ->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed for the flexible order")->capture_default_str();
  sub->add_option("--threads", a.threads, "Worker threads")->capture_default_str();
  sub->add_option("--out", a.out, "Output directory")->required();
  reg.emplace_back(sub, [&a] {
    typo_treebank* raw = nullptr;
    check(typo_treebank_load(a.input.c_str(), &raw), "reading " + a.input);
    Treebank in(raw);
    for (size_t i = 0; i < typo_treebank_warning_count(in.get()); ++i)
      std::cerr << "warning: " << typo_treebank_warning(in.get(), i) << "\n";
    typo_language lang;
    typo_language_default(&lang);
    lang.order = a.order.c_str();
    lang.case_system = a.case_system.c_str();
    lang.agreement = a.agreement == "full";
    lang.seed = a.seed;
    lang.threads = a.threads;
    typo_treebank* tb_raw = nullptr;
    typo_instances* inst_raw = nullptr;
    char* report = nullptr;
    check(typo_compile(in.get(), &lang, &tb_raw, &inst_raw, &report), "generate");
    Treebank tb(tb_raw);
    Instances inst(inst_raw);
    const std::string report_json = take_string(report);
    make_dir(a.out);
    const fs::path dir(a.out);
    check(typo_treebank_save(tb.get(), (dir / "corpus.conllu").c_str()), "writing corpus");
    check(typo_instances_save(inst.get(), (dir / "instances.jsonl").c_str()), "writing instances");
    write_file(dir / "collection.json", json::parse(report_json).dump(2) + "\n");
    // threads only affects scheduling, so it is left out of the record
    const Config cfg = {{"input", a.input},         {"order", a.order},
                        {"case", a.case_system},    {"agreement", a.agreement},
                        {"seed", std::to_string(a.seed)}};
    write_run_files(dir, "generate", cfg, {a.input},
                    {"corpus.conllu", "instances.jsonl", "collection.json"});
    std::cout << "wrote " << typo_treebank_size(tb.get()) << " sentences and "
              << typo_instances_size(inst.get()) << " instances to " << a.out << "\n";
  });
}

// ---- stats --------------------------------------------------------------

struct StatsArgs {
  std::vector<std::string> inputs;
  bool as_json = false;
  bool table = false;
};

void add_stats(CLI::App& app, StatsArgs& a, Registry& reg) {
  auto* sub = app.add_subcommand("stats", "Attractor and transitivity statistics of instance files");
  add_config_option(sub);
  sub->add_option("inputs,--inputs", a.inputs, "Instance files (JSONL)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  auto* j = sub->add_flag("--json", a.as_json, "Machine-readable output");
  sub->add_flag("--table", a.table, "Plain table (default)")->excludes(j);
  reg.emplace_back(sub, [&a] {
    json rows = json::array();
    for (const std::string& path : a.inputs) {
      Instances inst = load_instances(path);
      if (typo_instances_size(inst.get()) == 0) throw Failure{kEmpty, path + ": no instances"};
      char* raw = nullptr;
      check(typo_instances_stats(inst.get(), &raw), "stats");
      json row = json::parse(take_string(raw));
      row["source"] = path;
      rows.push_back(std::move(row));
    }
    if (a.as_json) {
      std::cout << (rows.size() == 1 ? rows[0] : rows).dump(2) << "\n";
      return;
    }
    std::printf("%-40s %10s %12s %12s %12s %14s\n", "source", "instances", "transitive%",
                "subj_attr%", "obj_attr%", "nonobj_attr%");
    for (const json& r : rows)
      std::printf("%-40s %10lld %12.2f %12.2f %12.2f %14.2f\n", r["source"].get<std::string>().c_str(),
                  r["instances"].get<long long>(), 100 * r["transitive_fraction"].get<double>(),
                  r["subject_attractor_percent"].get<double>(),
                  r["object_attractor_percent"].get<double>(),
                  r["non_object_attractor_percent"].get<double>());
  });
}

// ---- split --------------------------------------------------------------

struct SplitArgs {
  std::string input;
  bool pov = false;
  std::uint64_t seed = 0;
  std::string out;
};

void add_split(CLI::App& app, SplitArgs& a, Registry& reg) {
  auto* sub = app.add_subcommand("split", "Split instances into train/dev/test files");
  add_config_option(sub);
  sub->add_option("input,--input", a.input, "Instance file (JSONL)")->required();
  sub->add_flag("--poverty-of-stimulus", a.pov,
                "Intransitive training data; object-attractor, non-attractor-object and "
                "non-object-attractor test sets");
  sub->add_option("--seed", a.seed, "Seed of the hash split")->capture_default_str();
  sub->add_option("--out", a.out, "Output directory")->required();
  reg.emplace_back(sub, [&a] {
    Instances all = load_instances(a.input);
    if (typo_instances_size(all.get()) == 0) throw Failure{kEmpty, a.input + ": no instances"};
    make_dir(a.out);
    const fs::path dir(a.out);
    std::vector<std::pair<std::string, Instances>> parts;
    if (a.pov) {
      typo_instances *train = nullptr, *oa = nullptr, *ona = nullptr, *noa = nullptr;
      check(typo_split_poverty_of_stimulus(all.get(), &train, &oa, &ona, &noa), "split");
      Instances pool(train);
      // dev is carved from the intransitive pool so it stays free of objects
      typo_instances *tr = nullptr, *dev = nullptr, *rest = nullptr;
      check(typo_split_standard(pool.get(), a.seed, &tr, &dev, &rest), "split");
      Instances tr_h(tr), rest_h(rest);
      const typo_instances* both[] = {tr_h.get(), rest_h.get()};
      typo_instances* merged = nullptr;
      check(typo_instances_concat(both, 2, &merged), "split");
      parts.emplace_back("train.jsonl", Instances(merged));
      parts.emplace_back("dev.jsonl", Instances(dev));
      parts.emplace_back("test_object_attractor.jsonl", Instances(oa));
      parts.emplace_back("test_object_non_attractor.jsonl", Instances(ona));
      parts.emplace_back("test_non_object_attractor.jsonl", Instances(noa));
    } else {
      typo_instances *tr = nullptr, *dev = nullptr, *test = nullptr;
      check(typo_split_standard(all.get(), a.seed, &tr, &dev, &test), "split");
      parts.emplace_back("train.jsonl", Instances(tr));
      parts.emplace_back("dev.jsonl", Instances(dev));
      parts.emplace_back("test.jsonl", Instances(test));
    }
    std::vector<std::string> names;
    for (const auto& [name, set] : parts) {
      check(typo_instances_save(set.get(), (dir / name).c_str()), "writing " + name);
      names.push_back(name);
      std::printf("%-34s %8zu\n", name.c_str(), typo_instances_size(set.get()));
    }
    const Config cfg = {{"input", a.input},
                        {"poverty-of-stimulus", a.pov ? "true" : "false"},
                        {"seed", std::to_string(a.seed)}};
    write_run_files(dir, "split", cfg, {a.input}, names);
  });
}

// ---- train --------------------------------------------------------------

struct TrainArgs {
  std::string train, dev, test;
  typo_hyper hyper{};
  std::string mode = "joint";
  int seeds = 4;
  unsigned threads = 1;
  bool quiet = false;
  std::string out;
};

json metric_row(const json& m) {
  return {{"subject_accuracy", m["subject_accuracy"]},
          {"object_accuracy", m["object_accuracy"]},
          {"object_recall", m["object_recall"]},
          {"object_label_accuracy", m["object_label_accuracy"]}};
}

const char* kMetricNames[] = {"subject_accuracy", "object_accuracy", "object_recall",
                              "object_label_accuracy"};

json summarize(const std::vector<json>& runs) {
  json s = json::object();
  for (const char* k : kMetricNames) {
    std::vector<double> xs;
    for (const json& r : runs) xs.push_back(r[k].get<double>());
    const MeanStd m = mean_std(xs);
    s[k] = {{"mean", m.mean}, {"stdev", m.stdev}};
  }
  s["runs"] = runs.size();
  return s;
}

void print_runs(const std::vector<std::string>& labels, const std::vector<json>& runs) {
  std::printf("%-12s %10s %10s %10s %10s\n", "run", "subject", "object", "recall", "obj3way");
  for (std::size_t i = 0; i < runs.size(); ++i)
    std::printf("%-12s %10.2f %10.2f %10.2f %10.2f\n", labels[i].c_str(),
                100 * runs[i]["subject_accuracy"].get<double>(),
                100 * runs[i]["object_accuracy"].get<double>(),
                100 * runs[i]["object_recall"].get<double>(),
                100 * runs[i]["object_label_accuracy"].get<double>());
  std::vector<double> cols[4];
  for (const json& r : runs)
    for (int k = 0; k < 4; ++k) cols[k].push_back(r[kMetricNames[k]].get<double>());
  std::printf("%-12s", "mean±sd");
  for (auto& c : cols) std::printf(" %s", pm(c).c_str());
  std::printf("\n");
}

void add_train(CLI::App& app, TrainArgs& a, Registry& reg) {
  typo_hyper_default(&a.hyper);
  a.hyper.seed = 1;
  auto* sub = app.add_subcommand("train", "Train the agreement predictor with several seeds");
  add_config_option(sub);
  sub->add_option("--train", a.train, "Training instances")->required();
  sub->add_option("--dev", a.dev, "Development instances for early stopping");
  sub->add_option("--test", a.test, "Instances to score after training (default: dev)");
  sub->add_option("--mode", a.mode, "Which heads are trained")
      ->check(CLI::IsMember({"joint", "subject", "object"}))
      ->capture_default_str();
  sub->add_option("--seeds", a.seeds, "Number of runs")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--seed", a.hyper.seed, "Seed of the first run; run k uses seed+k")
      ->capture_default_str();
  sub->add_option("--epochs", a.hyper.max_epochs)->capture_default_str();
  sub->add_option("--batch-size", a.hyper.batch_size)->capture_default_str();
  sub->add_option("--lr", a.hyper.learning_rate)->capture_default_str();
  sub->add_option("--patience", a.hyper.patience)->capture_default_str();
  sub->add_option("--word-min-count", a.hyper.word_min_count)->capture_default_str();
  sub->add_option("--embedding-dim", a.hyper.embedding_dim)->capture_default_str();
  sub->add_option("--hidden", a.hyper.hidden)->capture_default_str();
  sub->add_option("--mlp1", a.hyper.mlp1)->capture_default_str();
  sub->add_option("--mlp2", a.hyper.mlp2)->capture_default_str();
  sub->add_option("--threads", a.threads, "Runs trained in parallel")->capture_default_str();
  sub->add_flag("--quiet", a.quiet, "No per-epoch progress");
  sub->add_option("--out", a.out, "Output directory")->required();
  reg.emplace_back(sub, [&a] {
    Instances train = load_instances(a.train);
    if (typo_instances_size(train.get()) == 0) throw Failure{kEmpty, a.train + ": no instances"};
    Instances dev = a.dev.empty() ? nullptr : load_instances(a.dev);
    Instances test = a.test.empty() ? nullptr : load_instances(a.test);
    const typo_instances* scored = test ? test.get() : dev.get();
    if (scored && typo_instances_size(scored) == 0)
      throw Failure{kEmpty, (test ? a.test : a.dev) + ": no instances"};
    make_dir(a.out);
    const fs::path dir(a.out);

    struct Run {
      std::uint64_t seed;
      std::string history, metrics;
      typo_status status = TYPO_OK;
      std::string error;
    };
    std::vector<Run> runs(a.seeds);
    std::mutex log;
    auto work = [&](int k) {
      Run& r = runs[k];
      r.seed = a.hyper.seed + static_cast<std::uint64_t>(k);
      typo_hyper h = a.hyper;
      h.seed = r.seed;
      h.mode = a.mode.c_str();
      struct Ctx {
        std::mutex* log;
        std::uint64_t seed;
        bool quiet;
      } ctx{&log, r.seed, a.quiet};
      auto on_epoch = [](int epoch, double loss, double dev_score, void* user) {
        auto* c = static_cast<Ctx*>(user);
        if (c->quiet) return;
        std::lock_guard<std::mutex> g(*c->log);
        std::fprintf(stderr, "seed %llu epoch %3d loss %.5f dev %.4f\n",
                     static_cast<unsigned long long>(c->seed), epoch, loss, dev_score);
      };
      typo_model* raw = nullptr;
      char* hist = nullptr;
      r.status = typo_train(train.get(), dev.get(), &h, on_epoch, &ctx, &raw, &hist);
      if (r.status != TYPO_OK) {
        r.error = typo_last_error();
        return;
      }
      Model model(raw);
      r.history = take_string(hist);
      const fs::path run_dir = dir / ("seed-" + std::to_string(r.seed));
      std::error_code ec;
      fs::create_directories(run_dir, ec);
      r.status = typo_model_save(model.get(), (run_dir / "model.txt").c_str());
      if (r.status == TYPO_OK && scored) {
        char* m = nullptr;
        r.status = typo_evaluate(model.get(), scored, &m);
        r.metrics = take_string(m);
      }
      if (r.status != TYPO_OK) r.error = typo_last_error();
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(a.threads, a.seeds));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (int k; (k = next++) < a.seeds;) work(k);
      });
    for (auto& t : pool) t.join();
    for (const Run& r : runs)
      if (r.status != TYPO_OK)
        throw Failure{exit_code(r.status), "seed " + std::to_string(r.seed) + ": " + r.error};

    std::vector<std::string> outputs, labels;
    std::vector<json> rows;
    for (const Run& r : runs) {
      const std::string sub_dir = "seed-" + std::to_string(r.seed);
      write_file(dir / sub_dir / "history.json", json::parse(r.history).dump(2) + "\n");
      outputs.push_back(sub_dir + "/model.txt");
      outputs.push_back(sub_dir + "/history.json");
      if (!r.metrics.empty()) {
        write_file(dir / sub_dir / "metrics.json", r.metrics + "\n");
        outputs.push_back(sub_dir + "/metrics.json");
        rows.push_back(metric_row(json::parse(r.metrics)));
        labels.push_back(sub_dir);
      }
    }
    if (!rows.empty()) {
      json summary = summarize(rows);
      summary["per_run"] = rows;
      write_file(dir / "summary.json", summary.dump(2) + "\n");
      outputs.push_back("summary.json");
      print_runs(labels, rows);
    }
    Config cfg = {{"train", a.train}, {"dev", a.dev}, {"test", a.test}, {"mode", a.mode},
                  {"seeds", std::to_string(a.seeds)}, {"seed", std::to_string(a.hyper.seed)},
                  {"epochs", std::to_string(a.hyper.max_epochs)},
                  {"batch-size", std::to_string(a.hyper.batch_size)},
                  {"lr", num(a.hyper.learning_rate)},
                  {"patience", std::to_string(a.hyper.patience)},
                  {"word-min-count", std::to_string(a.hyper.word_min_count)},
                  {"embedding-dim", std::to_string(a.hyper.embedding_dim)},
                  {"hidden", std::to_string(a.hyper.hidden)},
                  {"mlp1", std::to_string(a.hyper.mlp1)},
                  {"mlp2", std::to_string(a.hyper.mlp2)}};
    std::vector<std::string> inputs{a.train};
    if (!a.dev.empty()) inputs.push_back(a.dev);
    if (!a.test.empty()) inputs.push_back(a.test);
    write_run_files(dir, "train", cfg, inputs, outputs);
  });
}

// ---- eval ---------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> models;
  std::string test;
  std::string by = "none";
  std::string out;
};

void add_eval(CLI::App& app, EvalArgs& a, Registry& reg) {
  auto* sub = app.add_subcommand("eval", "Score one or more trained models");
  add_config_option(sub);
  sub->add_option("--model", a.models, "Model checkpoint (repeatable)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sub->add_option("--test", a.test, "Instances to score")->required();
  sub->add_option("--by", a.by, "Breakdown")
      ->check(CLI::IsMember({"none", "attractor", "test-category"}))
      ->capture_default_str();
  sub->add_option("--out", a.out, "Write metrics, predictions and a manifest here");
  reg.emplace_back(sub, [&a] {
    Instances test = load_instances(a.test);
    if (typo_instances_size(test.get()) == 0) throw Failure{kEmpty, a.test + ": no instances"};
    if (!a.out.empty()) make_dir(a.out);
    std::vector<json> metrics;
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < a.models.size(); ++i) {
      typo_model* raw = nullptr;
      check(typo_model_load(a.models[i].c_str(), &raw), "reading " + a.models[i]);
      Model model(raw);
      char* m = nullptr;
      check(typo_evaluate(model.get(), test.get(), &m), "eval");
      metrics.push_back(json::parse(take_string(m)));
      if (!a.out.empty()) {
        const std::string stem = "model-" + std::to_string(i + 1);
        write_file(fs::path(a.out) / (stem + ".metrics.json"), metrics.back().dump(2) + "\n");
        check(typo_predictions_save(model.get(), test.get(),
                                    (fs::path(a.out) / (stem + ".predictions.jsonl")).c_str()),
              "writing predictions");
        outputs.push_back(stem + ".metrics.json");
        outputs.push_back(stem + ".predictions.jsonl");
      }
    }

    // group -> one metric row per model
    std::map<std::string, std::vector<json>> groups;
    for (const json& m : metrics) {
      groups["overall"].push_back(metric_row(m));
      if (a.by == "attractor")
        for (const auto& [k, v] : m["by_attractor"].items()) groups[k].push_back(metric_row(v));
      if (a.by == "test-category")
        for (const auto& [k, v] : m["by_test_category"].items()) groups[k].push_back(metric_row(v));
    }
    std::printf("%-26s %8s %18s %18s %18s\n", "group", "n", "subject", "object", "recall");
    json summary = json::object();
    for (const auto& [name, rows] : groups) {
      long n = 0;
      const json& first = name == "overall" ? metrics[0]
                          : a.by == "attractor" ? metrics[0]["by_attractor"][name]
                                                : metrics[0]["by_test_category"][name];
      n = first["instances"].get<long>();
      std::vector<double> s, o, r;
      for (const json& row : rows) {
        s.push_back(row["subject_accuracy"].get<double>());
        o.push_back(row["object_accuracy"].get<double>());
        r.push_back(row["object_recall"].get<double>());
      }
      std::printf("%-26s %8ld %18s %18s %18s\n", name.c_str(), n, pm(s).c_str(), pm(o).c_str(),
                  pm(r).c_str());
      summary[name] = summarize(rows);
      summary[name]["instances"] = n;
    }
    if (!a.out.empty()) {
      write_file(fs::path(a.out) / "summary.json", summary.dump(2) + "\n");
      outputs.push_back("summary.json");
      std::vector<std::string> inputs = a.models;
      inputs.push_back(a.test);
      Config cfg = {{"test", a.test}, {"by", a.by}};
      for (const std::string& m : a.models) cfg.emplace_back("model", m);
      write_run_files(a.out, "eval", cfg, inputs, outputs);
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic typological variants of treebanks and agreement prediction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", typo_version());
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Registry reg;
  ToygenArgs toygen;
  GenerateArgs generate;
  StatsArgs stats;
  SplitArgs split;
  TrainArgs train;
  EvalArgs eval;
  add_toygen(app, toygen, reg);
  add_generate(app, generate, reg);
  add_stats(app, stats, reg);
  add_split(app, split, reg);
  add_train(app, train, reg);
  add_eval(app, eval, reg);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(args);
  } catch (const Failure& f) {
    std::cerr << "typology: " << f.message << "\n";
    return f.code;
  }
  try {
    // CLI11 wants the arguments without the program name, last one first
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    for (auto& [sub, body] : reg)
      if (sub->parsed()) body();
  } catch (const Failure& f) {
    std::cerr << "typology: " << f.message << "\n";
    return f.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "typology: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "typology: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
