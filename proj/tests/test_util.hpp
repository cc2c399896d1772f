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


#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "typology/pipeline.hpp"
#include "typology/treebank.hpp"

namespace typology::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TYPOLOGY_FIXTURE_DIR) + "/" + name;
}

inline SentenceTree fixture(const std::string& name) {
  return load_conllu(fixture_path(name + ".conllu")).sentences.at(0);
}

inline std::string surface(const SentenceTree& tree) {
  std::string out;
  for (const Token& t : tree.tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline int find_form(const SentenceTree& tree, const std::string& form) {
  for (const Token& t : tree.tokens)
    if (t.form == form) return t.index;
  return 0;
}

struct GoldenRow {
  std::string label, order, agreement, case_system, expected;
};

inline std::vector<GoldenRow> figure1_golden() {
  std::ifstream in(fixture_path("figure1_golden.tsv"));
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    GoldenRow r;
    std::getline(ss, r.label, '\t');
    std::getline(ss, r.order, '\t');
    std::getline(ss, r.agreement, '\t');
    std::getline(ss, r.case_system, '\t');
    std::getline(ss, r.expected, '\t');
    rows.push_back(r);
  }
  return rows;
}

inline LanguageConfig language(const std::string& order, const std::string& agreement,
                               const std::string& case_system, std::uint64_t seed = 0) {
  LanguageConfig cfg;
  cfg.order = core_order_from_string(order);
  cfg.marking = MarkingConfig::from_flags(case_system_from_string(case_system), agreement == "full");
  cfg.seed = seed;
  return cfg;
}

}  // namespace typology::testing
