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

#include "typology/arguments.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "typology/error.hpp"

namespace typology {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool in(std::string_view word, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

constexpr std::array<std::string_view, 5> kRelativeWords = {"who", "whom", "which",
                                                            "that", "whose"};

bool is_relative_word(const Token& t) {
  const std::string f = lower(t.form);
  const std::string l = lower(t.lemma);
  for (std::string_view w : kRelativeWords)
    if (f == w || l == w) return true;
  return false;
}

Plurality from_lexicon(std::string_view word) {
  if (in(word, {"they", "we", "them", "us", "these", "those"})) return Plurality::Plural;
  if (in(word, {"he", "she", "it", "him", "her", "this", "that", "i", "me"}))
    return Plurality::Singular;
  return Plurality::Unknown;
}

Plurality resolve(const SentenceTree& tree, int node, int depth) {
  const Token& t = tree.token(node);

  // Relativizers take their referent's number. This runs before the lexicon
  // so that relative "that" is not read as the singular demonstrative.
  if (depth < 8 && is_relative_pronoun(tree, node)) {
    if (auto ref = referent_of_relative_pronoun(tree, node); ref && *ref != node)
      return resolve(tree, *ref, depth + 1);
  }

  if (auto number = t.feat("Number")) {
    if (*number == "Sing") return Plurality::Singular;
    if (*number == "Plur") return Plurality::Plural;
  }
  if (t.xpos == "NNS" || t.xpos == "NNPS") return Plurality::Plural;
  if (t.xpos == "NN" || t.xpos == "NNP") return Plurality::Singular;

  if (t.upos == "PRON" || t.upos == "DET" || t.xpos == "PRP" || t.xpos == "DT") {
    Plurality p = from_lexicon(lower(t.form));
    if (p == Plurality::Unknown) p = from_lexicon(lower(t.lemma));
    if (p != Plurality::Unknown) return p;
  }

  if (t.upos == "NUM" || t.xpos == "CD") {
    const std::string f = lower(t.form);
    return (f == "1" || f == "one") ? Plurality::Singular : Plurality::Plural;
  }
  return Plurality::Unknown;
}

bool is_clause_boundary(const std::string& rel) {
  return in(rel, {"ccomp", "xcomp", "advcl", "csubj", "csubjpass", "parataxis", "root"});
}

}  // namespace

std::string_view to_string(Plurality p) {
  switch (p) {
    case Plurality::Singular:
      return "sg";
    case Plurality::Plural:
      return "pl";
    case Plurality::None:
      return "none";
    case Plurality::Unknown:
      return "unknown";
  }
  return "unknown";
}

Plurality plurality_from_string(std::string_view s) {
  if (s == "sg") return Plurality::Singular;
  if (s == "pl") return Plurality::Plural;
  if (s == "none") return Plurality::None;
  if (s == "unknown") return Plurality::Unknown;
  throw ParseError("unknown plurality label '" + std::string(s) + "'");
}

bool is_relative_pronoun(const SentenceTree& tree, int node) {
  const Token& t = tree.token(node);
  if (!is_relative_word(t)) return false;
  const std::string rel = canonical_relation(t.deprel);
  if (!in(rel, {"nsubj", "nsubjpass", "dobj"})) return false;
  if (t.head == 0) return false;
  return canonical_relation(tree.token(t.head).deprel) == "acl:relcl";
}

std::optional<int> referent_of_relative_pronoun(const SentenceTree& tree, int relpron) {
  int cur = tree.token(relpron).head;
  int steps = 0;
  while (cur != 0 && steps++ <= static_cast<int>(tree.size())) {
    const Token& t = tree.token(cur);
    const std::string rel = canonical_relation(t.deprel);
    if (rel == "acl:relcl") {
      if (t.head == 0) return std::nullopt;
      return t.head;
    }
    if (is_clause_boundary(rel) || t.head == 0) return std::nullopt;
    cur = t.head;
  }
  return std::nullopt;
}

Plurality resolve_plurality(const SentenceTree& tree, int node) {
  return resolve(tree, node, 0);
}

bool is_argument_head_candidate(const SentenceTree& tree, int node) {
  const Token& t = tree.token(node);
  if (in(t.upos, {"NOUN", "PROPN", "PRON", "ADJ", "NUM"})) return true;
  return is_relative_pronoun(tree, node);
}

bool is_labelable_verb(const SentenceTree& tree, int node) {
  const Token& t = tree.token(node);
  if (t.upos == "VERB") return true;
  if (t.upos == "AUX" && t.head == 0)
    return !children_with_rel(tree, node, {"nsubj"}).empty();
  return false;
}

std::vector<ArgumentRecord> collect_records(const SentenceTree& tree, ArgumentStats* stats) {
  ArgumentStats local;
  std::vector<ArgumentRecord> out;
  for (const Token& v : tree.tokens) {
    if (!is_labelable_verb(tree, v.index)) continue;

    std::optional<int> subject;
    std::optional<int> object;
    for (int c : tree.children(v.index)) {
      if (!is_argument_head_candidate(tree, c)) continue;
      const std::string rel = canonical_relation(tree.token(c).deprel);
      // children() is in surface order, so the first hit is the leftmost.
      if (!subject && (rel == "nsubj" || rel == "nsubjpass")) subject = c;
      if (!object && rel == "dobj") object = c;
    }
    if (!subject) continue;
    ++local.subject_bearing;
    if (canonical_relation(v.deprel) == "xcomp") {
      ++local.xcomp_excluded;
      continue;
    }

    ArgumentRecord r;
    r.verb = v.index;
    r.sent_id = tree.sent_id;
    r.subject_head = *subject;
    r.subject_plurality = resolve_plurality(tree, *subject);
    if (object) {
      r.object_head = *object;
      r.object_plurality = resolve_plurality(tree, *object);
    }
    if (!is_number(r.subject_plurality) ||
        (object && !is_number(r.object_plurality))) {
      ++local.unknown_dropped;
      continue;
    }
    ++local.emitted;
    out.push_back(std::move(r));
  }
  if (stats) *stats += local;
  return out;
}

}  // namespace typology
