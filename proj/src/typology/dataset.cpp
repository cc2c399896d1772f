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

#include "typology/dataset.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "typology/error.hpp"
#include "typology/reorder.hpp"

namespace typology {
namespace {

using nlohmann::json;

bool strictly_between(int x, int a, int b) {
  return (a < x && x < b) || (b < x && x < a);
}

bool is_nominal(const Token& t) {
  return t.upos == "NOUN" || t.upos == "PROPN" || t.upos == "PRON";
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double percent(long part, long whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::string_view to_string(TestCategory c) {
  switch (c) {
    case TestCategory::ObjectAttractor:
      return "object_attractor";
    case TestCategory::ObjectNonAttractor:
      return "object_non_attractor";
    case TestCategory::NonObjectAttractor:
      return "non_object_attractor";
  }
  return "object_attractor";
}

TestCategory test_category_from_string(std::string_view s) {
  for (TestCategory c : {TestCategory::ObjectAttractor, TestCategory::ObjectNonAttractor,
                         TestCategory::NonObjectAttractor})
    if (to_string(c) == s) return c;
  throw ParseError("unknown test category '" + std::string(s) + "'");
}

bool has_argument_attractor(const SentenceTree& tree, const ArgumentRecord& record,
                            AttractorTarget target) {
  if (!record.object_head) return false;
  tree.token(record.verb);
  const int subject = record.subject_head;
  const int object = *record.object_head;
  if (target == AttractorTarget::Subject)
    return strictly_between(object, subject, record.verb) &&
           record.object_plurality == opposite(record.subject_plurality);
  return strictly_between(subject, object, record.verb) &&
         record.subject_plurality == opposite(record.object_plurality);
}

bool has_non_object_attractor(const SentenceTree& tree, const ArgumentRecord& record) {
  const int lo = std::min(record.subject_head, record.verb);
  const int hi = std::max(record.subject_head, record.verb);
  const Plurality wanted = opposite(record.subject_plurality);
  for (int i = lo + 1; i < hi; ++i) {
    if (record.object_head && i == *record.object_head) continue;
    if (!is_nominal(tree.token(i))) continue;
    if (resolve_plurality(tree, i) == wanted) return true;
  }
  return false;
}

std::vector<PredictionInstance> build_instances(const SentenceTree& tree,
                                                const std::vector<ArgumentRecord>& records,
                                                const BuildConfig& config) {
  std::vector<PredictionInstance> out;
  out.reserve(records.size());
  std::vector<std::string> forms;
  forms.reserve(tree.size());
  for (const Token& t : tree.tokens) forms.push_back(t.form);

  for (const ArgumentRecord& r : records) {
    tree.token(r.verb);
    PredictionInstance inst;
    inst.tokens = forms;
    inst.target_index = r.verb - 1;
    inst.tokens[inst.target_index] = std::string(kVerbPlaceholder);
    inst.subject = r.subject_plurality;
    inst.object = r.object_plurality;
    inst.meta.sent_id = tree.sent_id;
    inst.meta.order = config.order;
    inst.meta.case_system = config.case_system;
    inst.meta.subject_attractor = has_argument_attractor(tree, r, AttractorTarget::Subject);
    inst.meta.object_attractor = has_argument_attractor(tree, r, AttractorTarget::Object);
    inst.meta.non_object_attractor = has_non_object_attractor(tree, r);
    inst.meta.subject_index = r.subject_head - 1;
    if (r.object_head) inst.meta.object_index = *r.object_head - 1;
    out.push_back(std::move(inst));
  }
  return out;
}

PovStimSplit split_poverty_of_stimulus(const std::vector<PredictionInstance>& instances) {
  PovStimSplit split;
  for (const PredictionInstance& inst : instances) {
    PredictionInstance copy = inst;
    if (inst.transitive()) {
      if (inst.meta.subject_attractor) {
        copy.meta.test_category = TestCategory::ObjectAttractor;
        split.test_object_attractor.push_back(std::move(copy));
      } else if (inst.object == inst.subject) {
        copy.meta.test_category = TestCategory::ObjectNonAttractor;
        split.test_object_non_attractor.push_back(std::move(copy));
      }
    } else if (inst.meta.non_object_attractor) {
      copy.meta.test_category = TestCategory::NonObjectAttractor;
      split.test_non_object_attractor.push_back(std::move(copy));
    } else {
      copy.meta.test_category.reset();
      split.train.push_back(std::move(copy));
    }
  }
  return split;
}

StandardSplit split_standard(const std::vector<PredictionInstance>& instances,
                             std::uint64_t seed) {
  StandardSplit split;
  for (const PredictionInstance& inst : instances) {
    const std::uint64_t bucket = splitmix64(fnv1a(inst.meta.sent_id) ^ splitmix64(seed)) % 10;
    if (bucket < 8)
      split.train.push_back(inst);
    else if (bucket == 8)
      split.dev.push_back(inst);
    else
      split.test.push_back(inst);
  }
  return split;
}

double CorpusStats::subject_attractor_percent() const {
  return percent(subject_attractors, instances);
}
double CorpusStats::object_attractor_percent() const {
  return percent(object_attractors, instances);
}
double CorpusStats::non_object_attractor_percent() const {
  return percent(non_object_attractors, instances);
}
double CorpusStats::transitive_fraction() const {
  return instances == 0 ? 0.0 : static_cast<double>(transitive) / static_cast<double>(instances);
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& o) {
  instances += o.instances;
  transitive += o.transitive;
  subject_attractors += o.subject_attractors;
  object_attractors += o.object_attractors;
  non_object_attractors += o.non_object_attractors;
  return *this;
}

CorpusStats corpus_stats(const std::vector<PredictionInstance>& instances) {
  CorpusStats s;
  for (const PredictionInstance& inst : instances) {
    ++s.instances;
    s.transitive += inst.transitive();
    s.subject_attractors += inst.meta.subject_attractor;
    s.object_attractors += inst.meta.object_attractor;
    s.non_object_attractors += inst.meta.non_object_attractor;
  }
  return s;
}

std::string instance_to_json(const PredictionInstance& inst) {
  json meta = {{"sent_id", inst.meta.sent_id},
               {"order", inst.meta.order},
               {"case_system", inst.meta.case_system},
               {"subject_attractor", inst.meta.subject_attractor},
               {"object_attractor", inst.meta.object_attractor},
               {"non_object_attractor", inst.meta.non_object_attractor},
               {"subject_index", inst.meta.subject_index},
               {"object_index", inst.meta.object_index ? json(*inst.meta.object_index) : json()}};
  if (inst.meta.test_category)
    meta["test_category"] = std::string(to_string(*inst.meta.test_category));
  json j = {{"tokens", inst.tokens},
            {"target_index", inst.target_index},
            {"subject", std::string(to_string(inst.subject))},
            {"object", std::string(to_string(inst.object))},
            {"meta", std::move(meta)}};
  return j.dump();
}

PredictionInstance instance_from_json(std::string_view line) {
  PredictionInstance inst;
  try {
    const json j = json::parse(line);
    inst.tokens = j.at("tokens").get<std::vector<std::string>>();
    inst.target_index = j.at("target_index").get<int>();
    inst.subject = plurality_from_string(j.at("subject").get<std::string>());
    inst.object = plurality_from_string(j.at("object").get<std::string>());
    const json& m = j.at("meta");
    inst.meta.sent_id = m.value("sent_id", "");
    inst.meta.order = m.value("order", "");
    inst.meta.case_system = m.value("case_system", "");
    inst.meta.subject_attractor = m.value("subject_attractor", false);
    inst.meta.object_attractor = m.value("object_attractor", false);
    inst.meta.non_object_attractor = m.value("non_object_attractor", false);
    inst.meta.subject_index = m.value("subject_index", 0);
    if (m.contains("object_index") && !m["object_index"].is_null())
      inst.meta.object_index = m["object_index"].get<int>();
    if (m.contains("test_category"))
      inst.meta.test_category = test_category_from_string(m["test_category"].get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad instance record: ") + e.what());
  }
  if (inst.target_index < 0 || inst.target_index >= static_cast<int>(inst.tokens.size()) ||
      inst.tokens[inst.target_index] != kVerbPlaceholder)
    throw ParseError("instance " + inst.meta.sent_id + ": target_index does not hold " +
                     std::string(kVerbPlaceholder));
  int placeholders = 0;
  for (const std::string& t : inst.tokens) placeholders += t == kVerbPlaceholder;
  if (placeholders != 1)
    throw ParseError("instance " + inst.meta.sent_id + ": expected exactly one placeholder");
  if (!is_number(inst.subject))
    throw ParseError("instance " + inst.meta.sent_id + ": subject label must be sg or pl");
  if (inst.object == Plurality::Unknown)
    throw ParseError("instance " + inst.meta.sent_id + ": object label must be sg, pl or none");
  return inst;
}

void write_instances(std::ostream& out, const std::vector<PredictionInstance>& instances) {
  out << json{{"schema", "typology-instances"}, {"version", kInstanceSchemaVersion}}.dump()
      << '\n';
  for (const PredictionInstance& inst : instances) out << instance_to_json(inst) << '\n';
}

std::vector<PredictionInstance> read_instances(std::istream& in, const std::string& name) {
  std::vector<PredictionInstance> out;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      json h;
      try {
        h = json::parse(line);
      } catch (const json::exception& e) {
        throw ParseError(name + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (h.value("schema", "") != "typology-instances")
        throw ParseError(name + ": missing typology-instances header");
      if (h.value("version", 0) != kInstanceSchemaVersion)
        throw ParseError(name + ": unsupported schema version");
      header = true;
      continue;
    }
    try {
      out.push_back(instance_from_json(line));
    } catch (const ParseError& e) {
      throw ParseError(name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  // A zero-byte file reads as an empty instance list; callers decide
  // whether that is an error.
  return out;
}

void save_instances(const std::string& path, const std::vector<PredictionInstance>& instances) {
  std::ostringstream out;
  write_instances(out, instances);
  write_file_atomically(path, out.str());
}

std::vector<PredictionInstance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return read_instances(in, path);
}

void write_file_atomically(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("short write to " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp + " to " + path);
  }
}

}  // namespace typology
