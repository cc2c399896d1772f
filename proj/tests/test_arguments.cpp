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


#include "doctest.h"
#include "test_util.hpp"
#include "typology/arguments.hpp"

using namespace typology;
using typology::testing::find_form;
using typology::testing::fixture;

TEST_SUITE("arguments") {
  TEST_CASE("plurality sources") {
    const SentenceTree s = fixture("figure1");
    CHECK(resolve_plurality(s, find_form(s, "they")) == Plurality::Plural);
    CHECK(resolve_plurality(s, find_form(s, "broker")) == Plurality::Singular);

    const std::string text =
        "1\tbox\tbox\tNOUN\tNN\t_\t3\tnsubj\t_\t_\n"
        "2\tthey\tthey\tPRON\tPRP\t_\t3\tnsubj\t_\t_\n"
        "3\tgo\tgo\tVERB\tVBP\t_\t0\troot\t_\t_\n"
        "4\t1\t1\tNUM\tCD\t_\t3\tdobj\t_\t_\n"
        "5\tthree\tthree\tNUM\tCD\t_\t3\tdobj\t_\t_\n"
        "6\tred\tred\tADJ\tJJ\t_\t3\tdobj\t_\t_\n"
        "7\tboxes\tbox\tNOUN\tNNS\t_\t3\tdobj\t_\t_\n";
    const SentenceTree t = parse_conllu(text, "t").sentences[0];
    CHECK(resolve_plurality(t, 1) == Plurality::Singular);
    CHECK(resolve_plurality(t, 2) == Plurality::Plural);
    CHECK(resolve_plurality(t, 4) == Plurality::Singular);
    CHECK(resolve_plurality(t, 5) == Plurality::Plural);
    CHECK(resolve_plurality(t, 6) == Plurality::Unknown);
    CHECK(resolve_plurality(t, 7) == Plurality::Plural);
  }

  TEST_CASE("features win over the tag") {
    const SentenceTree t =
        parse_conllu("1\tsheep\tsheep\tNOUN\tNN\tNumber=Plur\t0\troot\t_\t_\n", "t").sentences[0];
    CHECK(resolve_plurality(t, 1) == Plurality::Plural);
  }

  TEST_CASE("relative pronouns take the plurality of their referent") {
    const SentenceTree s = fixture("treasury_bonds");
    const int which = find_form(s, "which");
    CHECK(is_relative_pronoun(s, which));
    CHECK(referent_of_relative_pronoun(s, which) == find_form(s, "bonds"));
    CHECK(resolve_plurality(s, which) == Plurality::Plural);

    const SentenceTree d = fixture("differences");
    const int that = find_form(d, "that");
    CHECK(referent_of_relative_pronoun(d, that) == find_form(d, "differences"));
    CHECK(resolve_plurality(d, that) == Plurality::Plural);
  }

  TEST_CASE("relativizer without a relative clause has no referent") {
    const std::string text =
        "1\tthat\tthat\tPRON\tWDT\t_\t2\tnsubj\t_\t_\n"
        "2\tworks\twork\tVERB\tVBZ\t_\t0\troot\t_\t_\n";
    const SentenceTree t = parse_conllu(text, "t").sentences[0];
    CHECK_FALSE(referent_of_relative_pronoun(t, 1).has_value());
  }

  TEST_CASE("figure-1 records") {
    const SentenceTree s = fixture("figure1");
    const auto records = collect_records(s);
    REQUIRE(records.size() == 2);
    CHECK(records[0].verb == find_form(s, "say"));
    CHECK(records[0].subject_head == find_form(s, "they"));
    CHECK(records[0].subject_plurality == Plurality::Plural);
    CHECK_FALSE(records[0].object_head.has_value());
    CHECK(records[0].object_plurality == Plurality::None);
    CHECK(records[1].verb == find_form(s, "took"));
    CHECK(records[1].subject_plurality == Plurality::Singular);
    CHECK(records[1].object_head == find_form(s, "them"));
    CHECK(records[1].object_plurality == Plurality::Plural);
    CHECK(records[1].sent_id == "figure1");
  }

  TEST_CASE("centrust records") {
    const SentenceTree s = fixture("centrust");
    const auto records = collect_records(s);
    REQUIRE(records.size() == 1);
    CHECK(s.token(records[0].verb).form == "gave");
    CHECK(records[0].subject_plurality == Plurality::Singular);
    CHECK(records[0].object_plurality == Plurality::Plural);
  }

  TEST_CASE("copular root with a subject is labeled") {
    const SentenceTree s = fixture("differences");
    const auto records = collect_records(s);
    REQUIRE(records.size() == 2);
    CHECK(s.token(records[0].verb).form == "are");
    CHECK(records[0].subject_plurality == Plurality::Plural);
    CHECK(s.token(records[1].verb).form == "make");
    CHECK(records[1].object_plurality == Plurality::Plural);
  }

  TEST_CASE("xcomp verbs are excluded and counted") {
    const std::string text =
        "1\tdogs\tdog\tNOUN\tNNS\tNumber=Plur\t2\tnsubj\t_\t_\n"
        "2\twant\twant\tVERB\tVBP\t_\t0\troot\t_\t_\n"
        "3\tus\twe\tPRON\tPRP\tNumber=Plur\t5\tnsubj\t_\t_\n"
        "4\tto\tto\tPART\tTO\t_\t5\tmark\t_\t_\n"
        "5\tleave\tleave\tVERB\tVB\t_\t2\txcomp\t_\t_\n";
    ArgumentStats stats;
    const auto records = collect_records(parse_conllu(text, "t").sentences[0], &stats);
    CHECK(records.size() == 1);
    CHECK(stats.subject_bearing == 2);
    CHECK(stats.xcomp_excluded == 1);
    CHECK(stats.emitted == 1);
    CHECK(stats.subject_bearing == stats.xcomp_excluded + stats.unknown_dropped + stats.emitted);
  }

  TEST_CASE("unknown plurality drops the record") {
    const std::string text =
        "1\tred\tred\tADJ\tJJ\t_\t2\tnsubj\t_\t_\n"
        "2\twins\twin\tVERB\tVBZ\t_\t0\troot\t_\t_\n";
    ArgumentStats stats;
    CHECK(collect_records(parse_conllu(text, "t").sentences[0], &stats).empty());
    CHECK(stats.unknown_dropped == 1);
  }

  TEST_CASE("leftmost subject wins") {
    const std::string text =
        "1\tcat\tcat\tNOUN\tNN\tNumber=Sing\t3\tnsubj\t_\t_\n"
        "2\tdogs\tdog\tNOUN\tNNS\tNumber=Plur\t3\tnsubj\t_\t_\n"
        "3\trun\trun\tVERB\tVBP\t_\t0\troot\t_\t_\n";
    const auto records = collect_records(parse_conllu(text, "t").sentences[0]);
    REQUIRE(records.size() == 1);
    CHECK(records[0].subject_head == 1);
  }

  TEST_CASE("no verbs, no records") {
    const std::string text =
        "1\tthe\tthe\tDET\tDT\t_\t2\tdet\t_\t_\n"
        "2\tend\tend\tNOUN\tNN\t_\t0\troot\t_\t_\n";
    CHECK(collect_records(parse_conllu(text, "t").sentences[0]).empty());
  }
}
