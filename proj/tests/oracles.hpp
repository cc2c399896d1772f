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


// Brute-force reference computations, written independently of the library
// code they check.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "typology/dataset.hpp"
#include "typology/treebank.hpp"

namespace typology::testing {

// Number straight from the annotation: the Number feature, or for a
// relative pronoun the Number feature of the noun its clause modifies.
inline int oracle_number(const SentenceTree& tree, int index) {
  auto number_of = [](const Token& t) {
    for (const auto& [k, v] : t.feats)
      if (k == "Number") return v == "Sing" ? 0 : v == "Plur" ? 1 : -1;
    return -1;
  };
  const Token& t = tree.token(index);
  for (const auto& [k, v] : t.feats)
    if (k == "PronType" && v == "Rel") {
      const Token& clause = tree.token(t.head);
      if (clause.deprel == "acl:relcl" && clause.head > 0) return number_of(tree.token(clause.head));
      return -1;
    }
  return number_of(t);
}

struct OracleFlags {
  bool subject_attractor = false;
  bool object_attractor = false;
  bool non_object_attractor = false;
};

inline int label_number(Plurality p) {
  return p == Plurality::Singular ? 0 : p == Plurality::Plural ? 1 : -1;
}

// Rescans the emitted token sequence of `tree` (the reordered, marked
// sentence the instance was cut from).
inline OracleFlags oracle_flags(const SentenceTree& tree, const PredictionInstance& inst) {
  OracleFlags f;
  const int s = inst.meta.subject_index;
  const int v = inst.target_index;
  const int subj = label_number(inst.subject);
  const int obj = label_number(inst.object);
  auto between = [](int x, int a, int b) { return std::min(a, b) < x && x < std::max(a, b); };
  if (inst.meta.object_index) {
    const int o = *inst.meta.object_index;
    f.subject_attractor = between(o, s, v) && obj == 1 - subj;
    f.object_attractor = between(s, o, v) && subj == 1 - obj;
  }
  for (int k = std::min(s, v) + 1; k < std::max(s, v); ++k) {
    if (inst.meta.object_index && k == *inst.meta.object_index) continue;
    const Token& t = tree.tokens[static_cast<std::size_t>(k)];
    if (t.upos != "NOUN" && t.upos != "PROPN" && t.upos != "PRON") continue;
    if (oracle_number(tree, k + 1) == 1 - subj) f.non_object_attractor = true;
  }
  return f;
}

struct OracleSplitCounts {
  long train = 0, object_attractor = 0, object_non_attractor = 0, non_object_attractor = 0;
};

// Category counts from the gold labels and independently recomputed flags.
inline OracleSplitCounts oracle_split_counts(const std::vector<PredictionInstance>& all,
                                             const std::vector<OracleFlags>& flags) {
  OracleSplitCounts c;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const PredictionInstance& i = all[k];
    if (i.object == Plurality::None) {
      (flags[k].non_object_attractor ? c.non_object_attractor : c.train) += 1;
    } else if (flags[k].subject_attractor) {
      ++c.object_attractor;
    } else if (i.object == i.subject) {
      ++c.object_non_attractor;
    }
  }
  return c;
}

}  // namespace typology::testing
