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

#include "typology/reorder.hpp"

#include <algorithm>
#include <string>

#include "typology/arguments.hpp"
#include "typology/error.hpp"

namespace typology {
namespace {

bool is_subject_rel(const std::string& rel) {
  return rel == "nsubj" || rel == "nsubjpass" || rel == "csubj" || rel == "csubjpass";
}

bool is_object_rel(const std::string& rel) {
  return rel == "dobj" || rel == "ccomp" || rel == "xcomp";
}

bool is_fixed_rel(const std::string& rel) {
  return rel == "neg" || rel == "advmod" || rel == "compound:prt" || rel == "aux" ||
         rel == "auxpass";
}

bool is_pinned(const SentenceTree& tree, int child) {
  return canonical_relation(tree.token(child).deprel) == "mark" ||
         is_relative_pronoun(tree, child);
}

// Child-level view of a clause; ClausePlan expands the blocks to tokens.
struct ClauseShape {
  int subject = 0;
  int object = 0;
  std::vector<std::pair<int, Side>> fixed;
  std::vector<std::pair<int, Side>> side;
  std::vector<int> pinned;
};

ClauseShape shape_of(const SentenceTree& tree, int verb, int skip) {
  ClauseShape s;
  for (int c : tree.children(verb)) {
    if (c == skip) continue;
    const Side side = c < verb ? Side::Before : Side::After;
    const std::string rel = canonical_relation(tree.token(c).deprel);
    if (is_pinned(tree, c)) {
      s.pinned.push_back(c);
    } else if (!s.subject && is_subject_rel(rel)) {
      s.subject = c;
    } else if (!s.object && is_object_rel(rel)) {
      s.object = c;
    } else if (is_fixed_rel(rel)) {
      s.fixed.emplace_back(c, side);
    } else {
      s.side.emplace_back(c, side);
    }
  }
  return s;
}

// The last token, when it is leaf punctuation, stays last whatever happens.
int final_punctuation(const SentenceTree& tree) {
  if (tree.tokens.empty()) return 0;
  const Token& last = tree.tokens.back();
  if (last.upos != "PUNCT" || last.head == 0) return 0;
  for (const Token& t : tree.tokens)
    if (t.head == last.index) return 0;
  return last.index;
}

class Linearizer {
 public:
  Linearizer(const SentenceTree& tree, CoreOrder order, int skip)
      : tree_(tree), order_(order), skip_(skip) {}

  void emit(int node, std::vector<int>& out) const {
    if (!is_clause(node)) {
      std::vector<int> items = tree_.children(node);
      std::erase(items, skip_);
      items.push_back(node);
      std::sort(items.begin(), items.end());
      for (int i : items) {
        if (i == node)
          out.push_back(node);
        else
          emit(i, out);
      }
      return;
    }

    const ClauseShape s = shape_of(tree_, node, skip_);
    for (int p : s.pinned) emit(p, out);
    for (const auto& [c, side] : s.side)
      if (side == Side::Before) emit(c, out);

    for (char slot : slots()) {
      if (slot == 'S' && s.subject) emit(s.subject, out);
      if (slot == 'O' && s.object) emit(s.object, out);
      if (slot == 'V') {
        for (const auto& [c, side] : s.fixed)
          if (side == Side::Before) emit(c, out);
        out.push_back(node);
        for (const auto& [c, side] : s.fixed)
          if (side == Side::After) emit(c, out);
      }
    }

    for (const auto& [c, side] : s.side)
      if (side == Side::After) emit(c, out);
  }

 private:
  bool is_clause(int node) const {
    const ClauseShape s = shape_of(tree_, node, skip_);
    return s.subject != 0 || s.object != 0;
  }

  std::string_view slots() const {
    switch (order_) {
      case CoreOrder::SVO:
        return "SVO";
      case CoreOrder::SOV:
        return "SOV";
      case CoreOrder::VOS:
        return "VOS";
      case CoreOrder::VSO:
        return "VSO";
      case CoreOrder::OSV:
        return "OSV";
      case CoreOrder::OVS:
        return "OVS";
      default:
        throw InvalidArgument("linearizer needs a fixed order");
    }
  }

  const SentenceTree& tree_;
  CoreOrder order_;
  int skip_;
};

}  // namespace

std::string_view to_string(CoreOrder o) {
  switch (o) {
    case CoreOrder::SVO:
      return "svo";
    case CoreOrder::SOV:
      return "sov";
    case CoreOrder::VOS:
      return "vos";
    case CoreOrder::VSO:
      return "vso";
    case CoreOrder::OSV:
      return "osv";
    case CoreOrder::OVS:
      return "ovs";
    case CoreOrder::Flexible:
      return "flexible";
    case CoreOrder::Unchanged:
      return "unchanged";
  }
  return "unchanged";
}

CoreOrder core_order_from_string(std::string_view s) {
  for (CoreOrder o : {CoreOrder::SVO, CoreOrder::SOV, CoreOrder::VOS, CoreOrder::VSO,
                      CoreOrder::OSV, CoreOrder::OVS, CoreOrder::Flexible,
                      CoreOrder::Unchanged})
    if (to_string(o) == s) return o;
  throw InvalidArgument("unknown word order '" + std::string(s) + "'");
}

bool is_reorderable_clause(const SentenceTree& tree, int node) {
  const ClauseShape s = shape_of(tree, node, 0);
  return s.subject != 0 || s.object != 0;
}

ClausePlan plan_clause(const SentenceTree& tree, int verb) {
  tree.token(verb);
  const ClauseShape s = shape_of(tree, verb, 0);
  ClausePlan plan;
  plan.verb = verb;
  plan.subject_head = s.subject;
  plan.object_head = s.object;
  if (s.subject) plan.subject_block = subtree_indices(tree, s.subject);
  if (s.object) plan.object_block = subtree_indices(tree, s.object);
  plan.fixed_satellites = s.fixed;
  plan.side_preserving = s.side;
  plan.pinned = s.pinned;
  return plan;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CoreOrder sample_order(std::uint64_t seed, std::uint64_t ordinal) {
  const std::uint64_t draw = splitmix64(splitmix64(seed) ^ splitmix64(ordinal + 0x5851f42d4c957f2dULL));
  return kFixedOrders[draw % kFixedOrders.size()];
}

CoreOrder resolve_order(CoreOrder requested, std::uint64_t seed, std::uint64_t ordinal) {
  return requested == CoreOrder::Flexible ? sample_order(seed, ordinal) : requested;
}

SentenceTree reorder_sentence(const SentenceTree& tree, CoreOrder order, std::uint64_t seed,
                              std::uint64_t ordinal, std::vector<int>* index_map) {
  const int n = static_cast<int>(tree.size());
  if (index_map) {
    index_map->assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) (*index_map)[i] = i;
  }
  const CoreOrder fixed = resolve_order(order, seed, ordinal);
  if (fixed == CoreOrder::Unchanged) return tree;

  const int punct = final_punctuation(tree);
  std::vector<int> sequence;
  sequence.reserve(n);
  Linearizer(tree, fixed, punct).emit(tree.root(), sequence);
  if (punct) sequence.push_back(punct);
  if (static_cast<int>(sequence.size()) != n)
    throw Error("reordering lost tokens in sentence " + tree.sent_id);

  std::vector<int> new_index(n + 1, 0);
  for (int pos = 0; pos < n; ++pos) new_index[sequence[pos]] = pos + 1;

  SentenceTree out;
  out.sent_id = tree.sent_id;
  out.comments = tree.comments;
  out.tokens.reserve(n);
  for (int pos = 0; pos < n; ++pos) {
    Token t = tree.tokens[sequence[pos] - 1];
    t.index = pos + 1;
    t.head = t.head == 0 ? 0 : new_index[t.head];
    out.tokens.push_back(std::move(t));
  }
  if (index_map) *index_map = std::move(new_index);
  return out;
}

SentenceTree reorder_sentence(const SentenceTree& tree, CoreOrder order, std::uint64_t seed,
                              std::uint64_t ordinal) {
  return reorder_sentence(tree, order, seed, ordinal, nullptr);
}

}  // namespace typology
