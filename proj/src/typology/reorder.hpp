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

// Core-element word order rewriting.
//
// Each clause is emitted as
//
//   pinned | side-preserving(before) | core | side-preserving(after)
//
// where `core` arranges the subject block, the object block and the verb
// group (verb plus its neg/advmod/particle/aux satellites on their original
// sides) in the target order. Blocks are whole subtrees, linearized
// recursively so embedded clauses are already reordered when their parent
// moves them. Sentence-final punctuation is always emitted last.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "typology/treebank.hpp"

namespace typology {

enum class CoreOrder { SVO, SOV, VOS, VSO, OSV, OVS, Flexible, Unchanged };

inline constexpr std::array<CoreOrder, 6> kFixedOrders = {
    CoreOrder::SVO, CoreOrder::SOV, CoreOrder::VOS,
    CoreOrder::VSO, CoreOrder::OSV, CoreOrder::OVS};

std::string_view to_string(CoreOrder o);  // "svo", ..., "flexible", "unchanged"
CoreOrder core_order_from_string(std::string_view s);
inline bool is_fixed(CoreOrder o) {
  return o != CoreOrder::Flexible && o != CoreOrder::Unchanged;
}

enum class Side { Before, After };

struct ClausePlan {
  int verb = 0;
  std::vector<int> subject_block;  // token indices, original order
  std::vector<int> object_block;
  // (child head, side relative to the verb); each entry stands for the
  // child's whole subtree.
  std::vector<std::pair<int, Side>> fixed_satellites;
  std::vector<std::pair<int, Side>> side_preserving;
  std::vector<int> pinned;  // relative pronouns and complementizers

  int subject_head = 0;  // 0 when absent
  int object_head = 0;
};

// True if `node` has a non-pinned subject (nsubj/nsubjpass/csubj) or
// object (dobj/ccomp/xcomp) dependent; only such nodes are reordered.
bool is_reorderable_clause(const SentenceTree& tree, int node);

ClausePlan plan_clause(const SentenceTree& tree, int verb);

// Counter-based draw: the same (seed, ordinal) always gives the same order,
// independently of how sentences are scheduled.
CoreOrder sample_order(std::uint64_t seed, std::uint64_t ordinal);

// Fixed orders map to themselves; Flexible is resolved per sentence ordinal.
CoreOrder resolve_order(CoreOrder requested, std::uint64_t seed, std::uint64_t ordinal);

// Returns a re-indexed copy realizing `order` in every clause. Flexible is
// resolved with sample_order(seed, ordinal); Unchanged returns the input.
SentenceTree reorder_sentence(const SentenceTree& tree, CoreOrder order,
                              std::uint64_t seed = 0, std::uint64_t ordinal = 0);

// The same, also reporting old-index -> new-index (position 0 unused).
SentenceTree reorder_sentence(const SentenceTree& tree, CoreOrder order,
                              std::uint64_t seed, std::uint64_t ordinal,
                              std::vector<int>* index_map);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace typology
