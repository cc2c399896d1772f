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

// Small synthetic English treebanks with known argument structure.
//
// Every sentence is an SVO present-tense clause, optionally embedded under a
// clause-taking verb ("they say that ..."). Subjects may carry a PP or a
// relative-clause modifier whose noun can have the opposite number, which is
// how non-object attractors are produced. Objects are plain NPs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "typology/arguments.hpp"
#include "typology/treebank.hpp"

namespace typology {

struct Lexicon {
  struct Noun {
    std::string singular;
    std::string plural;
  };
  struct Verb {
    std::string lemma;
    std::string third_singular;
  };
  std::vector<Noun> nouns;
  std::vector<Verb> transitive_verbs;
  std::vector<Verb> intransitive_verbs;
  std::vector<Verb> clausal_verbs;
  std::vector<std::string> prepositions;
  std::vector<std::string> adjectives;
  std::vector<std::string> adverbs;

  // One entry per line: lemma<TAB>pos<TAB>plural_form, '#' comments allowed.
  // pos is NOUN, TVERB, IVERB, CVERB, ADP, ADJ or ADV; for verbs the third
  // column holds the 3sg present form.
  static Lexicon parse(std::istream& in, const std::string& name = "<lexicon>");
  static Lexicon load(const std::string& path);
  static const Lexicon& bundled();
};

struct ToySpec {
  std::size_t sentences = 1000;
  // Target share of records (not sentences) that have a direct object.
  double transitive_fraction = 0.35;
  // Subject modifiers; the three probabilities are exclusive and must sum to <= 1.
  double modifier_attractor_probability = 0.2;  // PP, noun of opposite number
  double neutral_modifier_probability = 0.1;    // PP, noun of the same number
  double relative_clause_probability = 0.1;     // "who V (P the N)"
  double embedding_probability = 0.3;           // ccomp per level
  int max_depth = 2;
  double pronoun_probability = 0.1;
  double adjective_probability = 0.2;
  double adverb_probability = 0.15;
  double complementizer_probability = 0.5;
  std::uint64_t seed = 1;
  Lexicon lexicon = Lexicon::bundled();

  void validate() const;
  // Per-clause object probability that makes the expected record-level
  // transitive share equal transitive_fraction (clamped to 1).
  double object_probability() const;
};

struct ToyCorpus {
  Treebank treebank;
  // Gold argument records per sentence, in verb surface order.
  std::vector<std::vector<ArgumentRecord>> gold;
};

ToyCorpus generate_with_gold(const ToySpec& spec);
Treebank generate(const ToySpec& spec);

}  // namespace typology
