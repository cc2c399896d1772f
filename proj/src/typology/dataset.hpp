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

// Prediction instances, attractor statistics and train/test splits.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typology/arguments.hpp"
#include "typology/treebank.hpp"

namespace typology {

inline constexpr std::string_view kVerbPlaceholder = "<verb>";

enum class AttractorTarget { Subject, Object };

enum class TestCategory { ObjectAttractor, ObjectNonAttractor, NonObjectAttractor };
std::string_view to_string(TestCategory c);  // "object_attractor", ...
TestCategory test_category_from_string(std::string_view s);

struct InstanceMeta {
  std::string sent_id;
  std::string order;        // resolved order of this sentence, e.g. "sov"
  std::string case_system;  // "none", "unambiguous", ...
  bool subject_attractor = false;
  bool object_attractor = false;
  bool non_object_attractor = false;
  std::optional<TestCategory> test_category;
  int subject_index = 0;  // 0-based positions in `tokens`
  std::optional<int> object_index;

  bool operator==(const InstanceMeta&) const = default;
};

struct PredictionInstance {
  std::vector<std::string> tokens;
  int target_index = 0;
  Plurality subject = Plurality::Singular;
  Plurality object = Plurality::None;
  InstanceMeta meta;

  bool transitive() const { return object != Plurality::None; }
  bool operator==(const PredictionInstance&) const = default;
};

struct BuildConfig {
  std::string order = "unchanged";
  std::string case_system = "none";
};

// True iff the other core argument's head sits strictly between the target
// argument's head and the verb and has the opposite number. Compound heads
// count by their head token alone.
bool has_argument_attractor(const SentenceTree& tree, const ArgumentRecord& record,
                            AttractorTarget target);

// True iff some nominal other than the object head, strictly between the
// subject head and the verb, has the opposite number to the subject.
bool has_non_object_attractor(const SentenceTree& tree, const ArgumentRecord& record);

// `tree` is already reordered and marked; one instance per record with that
// record's verb replaced by the placeholder.
std::vector<PredictionInstance> build_instances(const SentenceTree& tree,
                                                const std::vector<ArgumentRecord>& records,
                                                const BuildConfig& config);

struct PovStimSplit {
  std::vector<PredictionInstance> train;
  std::vector<PredictionInstance> test_object_attractor;
  std::vector<PredictionInstance> test_object_non_attractor;
  std::vector<PredictionInstance> test_non_object_attractor;
};

// Transitive instances are tested only: an interposed object of opposite
// number -> object_attractor, an object of the same number ->
// object_non_attractor, anything else transitive is dropped. Intransitive
// instances with a non-object attractor -> non_object_attractor; all other
// intransitive instances train.
PovStimSplit split_poverty_of_stimulus(const std::vector<PredictionInstance>& instances);

struct StandardSplit {
  std::vector<PredictionInstance> train;
  std::vector<PredictionInstance> dev;
  std::vector<PredictionInstance> test;
};

// 80/10/10 by a seeded hash of sent_id, so all instances of one sentence
// land in the same part.
StandardSplit split_standard(const std::vector<PredictionInstance>& instances,
                             std::uint64_t seed);

struct CorpusStats {
  long instances = 0;
  long transitive = 0;
  long subject_attractors = 0;
  long object_attractors = 0;
  long non_object_attractors = 0;

  double subject_attractor_percent() const;
  double object_attractor_percent() const;
  double non_object_attractor_percent() const;
  double transitive_fraction() const;

  CorpusStats& operator+=(const CorpusStats& o);
  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(const std::vector<PredictionInstance>& instances);

// JSON lines: a header record {"schema": "typology-instances", "version": 1}
// then one object per instance.
inline constexpr int kInstanceSchemaVersion = 1;
void write_instances(std::ostream& out, const std::vector<PredictionInstance>& instances);
std::vector<PredictionInstance> read_instances(std::istream& in, const std::string& name = "<stream>");
void save_instances(const std::string& path, const std::vector<PredictionInstance>& instances);
std::vector<PredictionInstance> load_instances(const std::string& path);

std::string instance_to_json(const PredictionInstance& inst);
PredictionInstance instance_from_json(std::string_view line);

// Write to a sibling temp file and rename over `path`.
void write_file_atomically(const std::string& path, std::string_view contents);

}  // namespace typology
