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


#include <sstream>

#include "doctest.h"
#include "test_util.hpp"
#include "typology/arguments.hpp"
#include "typology/corpusgen.hpp"
#include "typology/dataset.hpp"
#include "typology/error.hpp"

using namespace typology;

TEST_SUITE("corpusgen") {
  TEST_CASE("bundled lexicon") {
    const Lexicon& lex = Lexicon::bundled();
    CHECK(lex.nouns.size() >= 60);
    CHECK(lex.transitive_verbs.size() + lex.intransitive_verbs.size() + lex.clausal_verbs.size() >= 30);
    bool has_irregular = false;
    for (const auto& n : lex.nouns) has_irregular |= n.singular == "child" && n.plural == "children";
    CHECK(has_irregular);
  }

  TEST_CASE("lexicon parse errors") {
    std::istringstream bad_pos("dog\tNOUN\tdogs\ncat\tFOO\tcats\n");
    CHECK_THROWS_AS(Lexicon::parse(bad_pos), ParseError);
    std::istringstream bad_cols("dog\tNOUN\n");
    CHECK_THROWS_AS(Lexicon::parse(bad_cols), ParseError);
    CHECK_THROWS_AS(Lexicon::load("/nonexistent/lexicon.tsv"), IoError);
  }

  TEST_CASE("spec validation") {
    ToySpec s;
    s.transitive_fraction = 1.5;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = ToySpec{};
    s.modifier_attractor_probability = 0.7;
    s.neutral_modifier_probability = 0.7;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = ToySpec{};
    s.lexicon.nouns.clear();
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
  }

  TEST_CASE("generated trees validate and agree with the collector") {
    ToySpec spec;
    spec.sentences = 1500;
    spec.seed = 11;
    const ToyCorpus c = generate_with_gold(spec);
    REQUIRE(c.treebank.sentences.size() == spec.sentences);
    for (std::size_t i = 0; i < c.treebank.sentences.size(); ++i) {
      const SentenceTree& s = c.treebank.sentences[i];
      CHECK_NOTHROW(validate(s));
      CHECK(collect_records(s) == c.gold[i]);
    }
  }

  TEST_CASE("transitive fraction zero") {
    ToySpec spec;
    spec.sentences = 300;
    spec.transitive_fraction = 0;
    for (const auto& records : generate_with_gold(spec).gold)
      for (const ArgumentRecord& r : records) CHECK(r.object_plurality == Plurality::None);
  }

  TEST_CASE("transitive fraction matches the spec") {
    ToySpec spec;
    spec.sentences = 5000;
    spec.seed = 5;
    long total = 0, transitive = 0;
    for (const auto& records : generate_with_gold(spec).gold)
      for (const ArgumentRecord& r : records) {
        ++total;
        transitive += r.transitive();
      }
    const double fraction = static_cast<double>(transitive) / static_cast<double>(total);
    CHECK(std::abs(fraction - 0.35) <= 0.02);
  }

  TEST_CASE("modifier attractors always yield non-object attractors") {
    ToySpec spec;
    spec.sentences = 500;
    spec.modifier_attractor_probability = 1;
    spec.neutral_modifier_probability = 0;
    spec.relative_clause_probability = 0;
    spec.pronoun_probability = 0;
    const ToyCorpus c = generate_with_gold(spec);
    for (std::size_t i = 0; i < c.gold.size(); ++i)
      for (const ArgumentRecord& r : c.gold[i])
        CHECK(has_non_object_attractor(c.treebank.sentences[i], r));
  }

  TEST_CASE("english agreement on generated verbs") {
    ToySpec spec;
    spec.sentences = 300;
    const ToyCorpus c = generate_with_gold(spec);
    for (std::size_t i = 0; i < c.gold.size(); ++i)
      for (const ArgumentRecord& r : c.gold[i]) {
        const Token& v = c.treebank.sentences[i].token(r.verb);
        CHECK(v.xpos == (r.subject_plurality == Plurality::Singular ? "VBZ" : "VBP"));
      }
  }

  TEST_CASE("generation is deterministic per seed") {
    ToySpec spec;
    spec.sentences = 200;
    spec.seed = 9;
    const Treebank a = generate(spec);
    CHECK(generate(spec) == a);
    spec.seed = 10;
    CHECK_FALSE(generate(spec) == a);
  }
}
