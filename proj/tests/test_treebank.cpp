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
#include "typology/error.hpp"
#include "typology/treebank.hpp"

using namespace typology;
using typology::testing::fixture;
using typology::testing::fixture_path;

namespace {

std::vector<std::string> forms(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.form);
  return out;
}

}  // namespace

TEST_SUITE("treebank") {
  TEST_CASE("minimal single-token file") {
    const Treebank tb = parse_conllu("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n", "mini");
    REQUIRE(tb.sentences.size() == 1);
    const SentenceTree& s = tb.sentences[0];
    CHECK(s.size() == 1);
    CHECK(s.root() == 1);
    CHECK(s.sent_id == "mini-1");
    CHECK(parse_conllu(serialize_conllu(tb), "mini") == tb);
  }

  TEST_CASE("figure-1 fixture structure") {
    const SentenceTree s = fixture("figure1");
    CHECK(s.size() == 11);
    CHECK(s.token(s.root()).form == "say");
    const int took = typology::testing::find_form(s, "took");
    CHECK(s.token(took).head == s.root());
    CHECK(s.token(took).deprel == "ccomp");
    const int broker = typology::testing::find_form(s, "broker");
    CHECK(s.token(broker).head == took);
    CHECK(s.token(broker).deprel == "nsubj");
    CHECK(s.text() == "they say the broker took them out for lunch frequently .");
  }

  TEST_CASE("round trip of the fixtures is exact") {
    for (const char* name : {"figure1", "differences", "treasury_bonds", "centrust", "gap"}) {
      std::ifstream in(fixture_path(std::string(name) + ".conllu"));
      std::stringstream buf;
      buf << in.rdbuf();
      const Treebank tb = parse_conllu(buf.str(), name);
      CHECK(serialize_conllu(tb) == buf.str());
      CHECK(parse_conllu(serialize_conllu(tb), name) == tb);
    }
  }

  TEST_CASE("multiple roots are rejected") {
    const std::string text =
        "1\ta\ta\tX\tX\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\tX\t_\t0\troot\t_\t_\n";
    CHECK_THROWS_WITH_AS(parse_conllu(text, "t"), doctest::Contains("multiple roots"), ParseError);
  }

  TEST_CASE("malformed lines name sentence and line") {
    CHECK_THROWS_WITH_AS(parse_conllu("1\ta\ta\tX\n", "t"),
                         doctest::Contains("expected 10 tab-separated columns"), ParseError);
    CHECK_THROWS_WITH_AS(parse_conllu("1\ta\ta\tX\tX\t_\tzero\troot\t_\t_\n", "t"),
                         doctest::Contains("non-numeric head"), ParseError);
    const std::string cyc =
        "# sent_id = loop\n"
        "1\ta\ta\tX\tX\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tX\tX\t_\t3\tdep\t_\t_\n"
        "3\tc\tc\tX\tX\t_\t2\tdep\t_\t_\n";
    try {
      parse_conllu(cyc, "t");
      FAIL("cycle accepted");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("cyclic heads") != std::string::npos);
      CHECK(msg.find("loop") != std::string::npos);
    }
  }

  TEST_CASE("multiword tokens and empty nodes are skipped with warnings") {
    const std::string text =
        "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tdo\tdo\tAUX\tVBP\t_\t3\taux\t_\t_\n"
        "2\tn't\tnot\tPART\tRB\t_\t3\tneg\t_\t_\n"
        "3\tgo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n"
        "3.1\tgo\tgo\tVERB\tVB\t_\t_\t_\t3:conj\t_\n";
    std::vector<std::string> warnings;
    const Treebank tb = parse_conllu(text, "t", &warnings);
    CHECK(tb.sentences[0].size() == 3);
    CHECK(warnings.size() == 2);
  }

  TEST_CASE("duplicate sent_id is rejected") {
    const std::string text =
        "# sent_id = a\n1\tx\tx\tX\tX\t_\t0\troot\t_\t_\n\n"
        "# sent_id = a\n1\ty\ty\tX\tX\t_\t0\troot\t_\t_\n\n";
    CHECK_THROWS_WITH_AS(parse_conllu(text, "t"), doctest::Contains("duplicate sent_id"), ParseError);
  }

  TEST_CASE("a tab inside a form cannot be written") {
    Treebank tb = parse_conllu("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n", "t");
    tb.sentences[0].tokens[0].form = "G\to";
    CHECK_THROWS_AS(serialize_conllu(tb), ParseError);
  }

  TEST_CASE("missing file is an io error") {
    CHECK_THROWS_AS(load_conllu("/nonexistent/file.conllu"), IoError);
  }

  TEST_CASE("subtree tokens") {
    const SentenceTree s = fixture("figure1");
    CHECK(subtree_tokens(s, s.root()).size() == s.size());
    CHECK(forms(subtree_tokens(s, typology::testing::find_form(s, "broker"))) ==
          std::vector<std::string>{"the", "broker"});
    CHECK(forms(subtree_tokens(s, typology::testing::find_form(s, "frequently"))) ==
          std::vector<std::string>{"frequently"});
  }

  TEST_CASE("children with relation") {
    const SentenceTree s = fixture("figure1");
    const int took = typology::testing::find_form(s, "took");
    CHECK(children_with_rel(s, took, {"dobj"}) ==
          std::vector<int>{typology::testing::find_form(s, "them")});
    CHECK(children_with_rel(s, s.root(), {"nsubj"}) ==
          std::vector<int>{typology::testing::find_form(s, "they")});
    CHECK(children_with_rel(s, took, {}).empty());
  }

  TEST_CASE("UD v2 relation names are read as their v1 equivalents") {
    CHECK(canonical_relation("obj") == "dobj");
    CHECK(canonical_relation("nsubj:pass") == "nsubjpass");
    CHECK(canonical_relation("dobj") == "dobj");
    const std::string text =
        "1\tdogs\tdog\tNOUN\tNNS\tNumber=Plur\t2\tnsubj\t_\t_\n"
        "2\tsee\tsee\tVERB\tVBP\t_\t0\troot\t_\t_\n"
        "3\tcats\tcat\tNOUN\tNNS\tNumber=Plur\t2\tobj\t_\t_\n";
    const SentenceTree s = parse_conllu(text, "t").sentences[0];
    CHECK(children_with_rel(s, 2, {"dobj"}) == std::vector<int>{3});
    Treebank tb = parse_conllu(text, "t");
    apply_relation_aliases(tb, default_relations());
    CHECK(tb.sentences[0].token(3).deprel == "dobj");
  }

  TEST_CASE("token accessor rejects bad indices") {
    const SentenceTree s = fixture("figure1");
    CHECK_THROWS_AS(s.token(0), InvalidArgument);
    CHECK_THROWS_AS(s.token(12), InvalidArgument);
  }
}
