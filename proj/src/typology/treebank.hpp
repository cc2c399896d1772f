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

// CoNLL-U treebanks: reading, validation, writing and tree navigation.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace typology {

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  // FEATS in file order, so that writing reproduces the input exactly.
  std::vector<std::pair<std::string, std::string>> feats;
  int head = 0;  // 0 = root
  std::string deprel;
  // DEPS and MISC are carried through untouched.
  std::string deps = "_";
  std::string misc = "_";

  std::optional<std::string> feat(std::string_view key) const;
  void set_feat(std::string_view key, std::string_view value);

  bool operator==(const Token&) const = default;
};

struct SentenceTree {
  std::string sent_id;
  std::vector<Token> tokens;
  // Comment lines other than "# sent_id = ...", without the leading '#'.
  std::vector<std::string> comments;

  std::size_t size() const { return tokens.size(); }
  const Token& token(int index) const;
  Token& token(int index);
  int root() const;
  // Direct dependents of `node` (0 = virtual root) in surface order.
  std::vector<int> children(int node) const;
  std::string text() const;

  bool operator==(const SentenceTree&) const = default;
};

struct Treebank {
  std::vector<SentenceTree> sentences;
  std::string source_name;

  bool operator==(const Treebank&) const = default;
};

// Throws ParseError naming the sentence when an invariant is broken:
// gapped indices, bad heads, zero or several roots, cycles, empty
// form/lemma, or tab/newline inside a field.
void validate(const SentenceTree& tree);

// `warnings`, when given, receives one message per skipped multiword-token
// or empty-node line.
Treebank parse_conllu(std::istream& in, std::string source_name,
                      std::vector<std::string>* warnings = nullptr);
Treebank parse_conllu(std::string_view text, std::string source_name,
                      std::vector<std::string>* warnings = nullptr);
Treebank load_conllu(const std::string& path,
                     std::vector<std::string>* warnings = nullptr);

void write_conllu(std::ostream& out, const Treebank& tb);
std::string serialize_conllu(const Treebank& tb);

// Node plus all transitive dependents, in surface order.
std::vector<Token> subtree_tokens(const SentenceTree& tree, int node);
std::vector<int> subtree_indices(const SentenceTree& tree, int node);

// Direct dependents whose canonical deprel is in `rels`, in surface order.
std::vector<int> children_with_rel(const SentenceTree& tree, int node,
                                   const std::set<std::string>& rels);

// Relation names differ between UD releases and converters (obj vs dobj,
// nsubj:pass vs nsubjpass, ...). Everything downstream compares canonical
// names, which follow the older UD v1 inventory.
class RelationMap {
 public:
  RelationMap();  // built-in UD v2 -> v1 aliases
  explicit RelationMap(std::map<std::string, std::string> aliases);

  void add(std::string from, std::string to);
  std::string canonical(std::string_view deprel) const;
  const std::map<std::string, std::string>& aliases() const {
    return aliases_;
  }

 private:
  std::map<std::string, std::string> aliases_;
};

const RelationMap& default_relations();
std::string canonical_relation(std::string_view deprel);

// Rewrites every deprel through `map`. Used to fold corpus-specific labels
// into the canonical inventory before any transformation runs.
void apply_relation_aliases(Treebank& tb, const RelationMap& map);

}  // namespace typology
