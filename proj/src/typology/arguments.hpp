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

// Verb-argument collection: which verbs get a label, who their subject and
// object are, and whether those are singular or plural.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typology/treebank.hpp"

namespace typology {

enum class Plurality { Singular, Plural, None, Unknown };

std::string_view to_string(Plurality p);  // "sg", "pl", "none", "unknown"
Plurality plurality_from_string(std::string_view s);
inline bool is_number(Plurality p) {
  return p == Plurality::Singular || p == Plurality::Plural;
}
inline Plurality opposite(Plurality p) {
  return p == Plurality::Singular ? Plurality::Plural
         : p == Plurality::Plural ? Plurality::Singular
                                  : p;
}

struct ArgumentRecord {
  int verb = 0;
  int subject_head = 0;
  Plurality subject_plurality = Plurality::Unknown;
  std::optional<int> object_head;
  Plurality object_plurality = Plurality::None;
  std::string sent_id;

  bool transitive() const { return object_head.has_value(); }
  bool operator==(const ArgumentRecord&) const = default;
};

// Counters surfaced by `stats`. subject_bearing == xcomp_excluded +
// unknown_dropped + emitted on every input.
struct ArgumentStats {
  long subject_bearing = 0;
  long xcomp_excluded = 0;
  long unknown_dropped = 0;
  long emitted = 0;

  ArgumentStats& operator+=(const ArgumentStats& o) {
    subject_bearing += o.subject_bearing;
    xcomp_excluded += o.xcomp_excluded;
    unknown_dropped += o.unknown_dropped;
    emitted += o.emitted;
    return *this;
  }
  bool operator==(const ArgumentStats&) const = default;
};

// who/whom/which/that/whose attached by nsubj, nsubjpass or dobj to the
// verb of a relative clause. Form and lemma are both consulted so the test
// still works after case suffixes have been attached.
bool is_relative_pronoun(const SentenceTree& tree, int node);

// The noun a relative clause modifies: walk up from `relpron` to the first
// acl:relcl node and return its governor. Stops at other clause boundaries.
std::optional<int> referent_of_relative_pronoun(const SentenceTree& tree, int relpron);

Plurality resolve_plurality(const SentenceTree& tree, int node);

// POS filter for argument heads: nouns, proper nouns, pronouns, adjectives,
// cardinals and relative pronouns.
bool is_argument_head_candidate(const SentenceTree& tree, int node);

// Labeled verbs: upos VERB, plus a root AUX with an nsubj child.
bool is_labelable_verb(const SentenceTree& tree, int node);

std::vector<ArgumentRecord> collect_records(const SentenceTree& tree,
                                            ArgumentStats* stats = nullptr);

}  // namespace typology
