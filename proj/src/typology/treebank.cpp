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

#include "typology/treebank.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "typology/error.hpp"

namespace typology {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool has_control_char(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

std::string feats_string(const Token& t) {
  if (t.feats.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : t.feats) {
    if (!out.empty()) out += '|';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

}  // namespace

std::optional<std::string> Token::feat(std::string_view key) const {
  for (const auto& [k, v] : feats)
    if (k == key) return v;
  return std::nullopt;
}

void Token::set_feat(std::string_view key, std::string_view value) {
  for (auto& [k, v] : feats) {
    if (k == key) {
      v = value;
      return;
    }
  }
  feats.emplace_back(std::string(key), std::string(value));
}

const Token& SentenceTree::token(int index) const {
  if (index < 1 || index > static_cast<int>(tokens.size()))
    throw InvalidArgument("token index " + std::to_string(index) +
                          " out of range in sentence " + sent_id);
  return tokens[index - 1];
}

Token& SentenceTree::token(int index) {
  return const_cast<Token&>(std::as_const(*this).token(index));
}

int SentenceTree::root() const {
  for (const Token& t : tokens)
    if (t.head == 0) return t.index;
  return 0;
}

std::vector<int> SentenceTree::children(int node) const {
  std::vector<int> out;
  for (const Token& t : tokens)
    if (t.head == node) out.push_back(t.index);
  return out;
}

std::string SentenceTree::text() const {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

void validate(const SentenceTree& tree) {
  const std::string where = "sentence " + tree.sent_id;
  const int n = static_cast<int>(tree.tokens.size());
  if (n == 0) fail(where, "no tokens");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = tree.tokens[i];
    const std::string tw = where + ", token " + std::to_string(i + 1);
    if (t.index != i + 1) fail(tw, "indices must run 1..n without gaps");
    if (t.form.empty()) fail(tw, "empty form");
    if (t.lemma.empty()) fail(tw, "empty lemma");
    for (const std::string* field :
         {&t.form, &t.lemma, &t.upos, &t.xpos, &t.deprel, &t.deps, &t.misc})
      if (has_control_char(*field)) fail(tw, "tab or newline inside a field");
    for (const auto& [k, v] : t.feats)
      if (has_control_char(k) || has_control_char(v))
        fail(tw, "tab or newline inside a feature");
    if (t.head < 0 || t.head > n) fail(tw, "head out of range");
    if (t.head == t.index) fail(tw, "token is its own head");
    if (t.head == 0) ++roots;
  }
  if (roots == 0) fail(where, "no root");
  if (roots > 1) fail(where, "multiple roots");
  // Every token must reach the root in at most n steps.
  for (int i = 1; i <= n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != 0) {
      cur = tree.tokens[cur - 1].head;
      if (++steps > n) fail(where, "cyclic heads at token " + std::to_string(i));
    }
  }
}

Treebank parse_conllu(std::istream& in, std::string source_name,
                      std::vector<std::string>* warnings) {
  Treebank tb;
  tb.source_name = std::move(source_name);
  std::unordered_set<std::string> seen_ids;

  SentenceTree current;
  bool have_id = false;
  int first_line = 0;
  int line_no = 0;

  auto finish = [&]() {
    if (current.tokens.empty() && current.comments.empty() && !have_id) return;
    if (!have_id)
      current.sent_id = tb.source_name + "-" + std::to_string(tb.sentences.size() + 1);
    const std::string where = "sentence " + current.sent_id + " (line " +
                              std::to_string(first_line) + ")";
    if (current.tokens.empty()) fail(where, "no tokens");
    try {
      validate(current);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (line " +
                       std::to_string(first_line) + ")");
    }
    if (!seen_ids.insert(current.sent_id).second)
      fail(where, "duplicate sent_id");
    tb.sentences.push_back(std::move(current));
    current = SentenceTree{};
    have_id = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    if (current.tokens.empty() && current.comments.empty() && !have_id)
      first_line = line_no;
    const std::string where = "sentence " +
                              (have_id ? current.sent_id
                                       : "#" + std::to_string(tb.sentences.size() + 1)) +
                              ", line " + std::to_string(line_no);
    if (line[0] == '#') {
      std::string_view body = std::string_view(line).substr(1);
      std::string_view trimmed = body;
      while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
      if (trimmed.starts_with("sent_id")) {
        auto eq = trimmed.find('=');
        if (eq != std::string_view::npos) {
          std::string_view id = trimmed.substr(eq + 1);
          while (!id.empty() && id.front() == ' ') id.remove_prefix(1);
          while (!id.empty() && id.back() == ' ') id.remove_suffix(1);
          current.sent_id = std::string(id);
          have_id = true;
          continue;
        }
      }
      current.comments.emplace_back(body);
      continue;
    }

    auto cols = split(line, '\t');
    if (cols.size() != 10)
      fail(where, "expected 10 tab-separated columns, found " +
                      std::to_string(cols.size()));
    if (cols[0].find('-') != std::string_view::npos) {
      if (warnings) warnings->push_back(where + ": skipped multiword token " + std::string(cols[0]));
      continue;
    }
    if (cols[0].find('.') != std::string_view::npos) {
      if (warnings) warnings->push_back(where + ": skipped empty node " + std::string(cols[0]));
      continue;
    }
    Token t;
    auto idx = to_int(cols[0]);
    if (!idx) fail(where, "non-numeric token index '" + std::string(cols[0]) + "'");
    auto head = to_int(cols[6]);
    if (!head) fail(where, "non-numeric head '" + std::string(cols[6]) + "'");
    t.index = *idx;
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    if (cols[5] != "_") {
      for (std::string_view kv : split(cols[5], '|')) {
        auto eq = kv.find('=');
        if (eq == std::string_view::npos)
          fail(where, "malformed feature '" + std::string(kv) + "'");
        t.feats.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
      }
    }
    t.head = *head;
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    current.tokens.push_back(std::move(t));
  }
  finish();
  return tb;
}

Treebank parse_conllu(std::string_view text, std::string source_name,
                      std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, std::move(source_name), warnings);
}

Treebank load_conllu(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_conllu(in, path, warnings);
}

void write_conllu(std::ostream& out, const Treebank& tb) {
  for (const SentenceTree& tree : tb.sentences) {
    validate(tree);
    out << "# sent_id = " << tree.sent_id << '\n';
    for (const std::string& c : tree.comments) out << '#' << c << '\n';
    for (const Token& t : tree.tokens) {
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos
          << '\t' << t.xpos << '\t' << feats_string(t) << '\t' << t.head
          << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
    }
    out << '\n';
  }
}

std::string serialize_conllu(const Treebank& tb) {
  std::ostringstream out;
  write_conllu(out, tb);
  return out.str();
}

std::vector<int> subtree_indices(const SentenceTree& tree, int node) {
  tree.token(node);
  const int n = static_cast<int>(tree.size());
  std::vector<char> inside(n + 1, 0);
  // Decide membership by walking each token's head chain up to `node`.
  for (int i = 1; i <= n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != 0 && cur != node && steps++ <= n) cur = tree.tokens[cur - 1].head;
    inside[i] = cur == node;
  }
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (inside[i]) out.push_back(i);
  return out;
}

std::vector<Token> subtree_tokens(const SentenceTree& tree, int node) {
  std::vector<Token> out;
  for (int i : subtree_indices(tree, node)) out.push_back(tree.tokens[i - 1]);
  return out;
}

std::vector<int> children_with_rel(const SentenceTree& tree, int node,
                                   const std::set<std::string>& rels) {
  std::vector<int> out;
  if (rels.empty()) return out;
  for (const Token& t : tree.tokens)
    if (t.head == node && rels.count(canonical_relation(t.deprel))) out.push_back(t.index);
  return out;
}

RelationMap::RelationMap()
    : aliases_{{"obj", "dobj"},
               {"nsubj:pass", "nsubjpass"},
               {"csubj:pass", "csubjpass"},
               {"aux:pass", "auxpass"},
               {"prt", "compound:prt"},
               {"rcmod", "acl:relcl"},
               {"obl", "nmod"}} {}

RelationMap::RelationMap(std::map<std::string, std::string> aliases)
    : aliases_(std::move(aliases)) {}

void RelationMap::add(std::string from, std::string to) {
  aliases_[std::move(from)] = std::move(to);
}

std::string RelationMap::canonical(std::string_view deprel) const {
  auto it = aliases_.find(std::string(deprel));
  return it == aliases_.end() ? std::string(deprel) : it->second;
}

const RelationMap& default_relations() {
  static const RelationMap map;
  return map;
}

std::string canonical_relation(std::string_view deprel) {
  return default_relations().canonical(deprel);
}

void apply_relation_aliases(Treebank& tb, const RelationMap& map) {
  for (SentenceTree& tree : tb.sentences)
    for (Token& t : tree.tokens) t.deprel = map.canonical(t.deprel);
}

}  // namespace typology
