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


#include <map>

#include "doctest.h"
#include "test_util.hpp"
#include "typology/reorder.hpp"

using namespace typology;
using typology::testing::find_form;
using typology::testing::fixture;
using typology::testing::surface;

namespace {

std::vector<std::string> block_forms(const SentenceTree& s, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(s.token(i).form);
  return out;
}

}  // namespace

TEST_SUITE("reorder") {
  TEST_CASE("figure-1 word-order rows") {
    const SentenceTree s = fixture("figure1");
    const std::map<std::string, std::string> expected = {
        {"svo", "they say the broker took out frequently them for lunch ."},
        {"sov", "they the broker them took out frequently for lunch say ."},
        {"vos", "say took out frequently them the broker for lunch they ."},
        {"vso", "say they took out frequently the broker them for lunch ."},
        {"osv", "them the broker took out frequently for lunch they say ."},
        {"ovs", "them took out frequently the broker for lunch say they ."}};
    for (const auto& [order, text] : expected) {
      CAPTURE(order);
      CHECK(surface(reorder_sentence(s, core_order_from_string(order))) == text);
    }
  }

  TEST_CASE("relativizer stays at the front of its clause") {
    const SentenceTree s = fixture("differences");
    CHECK(surface(reorder_sentence(s, CoreOrder::VSO)) ==
          "But are these not the differences that make headlines .");
  }

  TEST_CASE("plan of took") {
    const SentenceTree s = fixture("figure1");
    const ClausePlan p = plan_clause(s, find_form(s, "took"));
    CHECK(block_forms(s, p.subject_block) == std::vector<std::string>{"the", "broker"});
    CHECK(block_forms(s, p.object_block) == std::vector<std::string>{"them"});
    REQUIRE(p.fixed_satellites.size() == 2);
    CHECK(s.token(p.fixed_satellites[0].first).form == "out");
    CHECK(p.fixed_satellites[0].second == Side::After);
    CHECK(s.token(p.fixed_satellites[1].first).form == "frequently");
    REQUIRE(p.side_preserving.size() == 1);
    CHECK(s.token(p.side_preserving[0].first).form == "lunch");
    CHECK(p.side_preserving[0].second == Side::After);
  }

  TEST_CASE("plan of say moves the whole complement") {
    const SentenceTree s = fixture("figure1");
    const ClausePlan p = plan_clause(s, find_form(s, "say"));
    CHECK(p.object_block.size() == 8);
    CHECK(p.object_head == find_form(s, "took"));
  }

  TEST_CASE("leaf verb has an empty plan") {
    const SentenceTree t =
        parse_conllu("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n", "t").sentences[0];
    const ClausePlan p = plan_clause(t, 1);
    CHECK(p.subject_block.empty());
    CHECK(p.object_block.empty());
    CHECK(p.fixed_satellites.empty());
    CHECK(p.side_preserving.empty());
    CHECK(p.pinned.empty());
  }

  TEST_CASE("unchanged is the identity") {
    const SentenceTree s = fixture("figure1");
    CHECK(reorder_sentence(s, CoreOrder::Unchanged) == s);
  }

  TEST_CASE("heads are re-indexed consistently") {
    const SentenceTree s = fixture("figure1");
    const SentenceTree r = reorder_sentence(s, CoreOrder::SOV);
    validate(r);
    const int took = find_form(r, "took");
    CHECK(r.token(find_form(r, "broker")).head == took);
    CHECK(r.token(find_form(r, "them")).head == took);
    CHECK(r.token(took).head == find_form(r, "say"));
    CHECK(r.root() == find_form(r, "say"));
  }

  TEST_CASE("sampled orders are uniform") {
    std::map<CoreOrder, int> counts;
    const int n = 6000;
    for (int i = 0; i < n; ++i) ++counts[sample_order(42, static_cast<std::uint64_t>(i))];
    CHECK(counts.size() == 6);
    double chi2 = 0;
    for (const auto& [o, c] : counts) chi2 += (c - n / 6.0) * (c - n / 6.0) / (n / 6.0);
    // 5 degrees of freedom, p = 0.001
    CHECK(chi2 < 20.52);
  }

  TEST_CASE("sampling is deterministic and seed dependent") {
    std::vector<CoreOrder> a, b, c;
    for (std::uint64_t i = 0; i < 100; ++i) {
      a.push_back(sample_order(7, i));
      b.push_back(sample_order(7, i));
      c.push_back(sample_order(8, i));
    }
    CHECK(a == b);
    CHECK(a != c);
    CHECK(resolve_order(CoreOrder::SOV, 7, 3) == CoreOrder::SOV);
    CHECK(resolve_order(CoreOrder::Flexible, 7, 3) == sample_order(7, 3));
  }

  TEST_CASE("order names") {
    for (CoreOrder o : kFixedOrders) CHECK(core_order_from_string(to_string(o)) == o);
    CHECK(core_order_from_string("flexible") == CoreOrder::Flexible);
    CHECK_THROWS(core_order_from_string("xyz"));
  }
}
