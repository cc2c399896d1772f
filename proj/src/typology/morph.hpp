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

// Synthetic case and agreement morphology.
//
//                 SG    PL
//   subject       kar   kon
//   object        kin   ker
//   indirect obj  ken   kre
//
// Syncretic marking reuses "kar" for plural objects; argument-only marking
// uses kin/ker for every role. Verbs carry the subject suffix followed by
// the object suffix.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "typology/arguments.hpp"
#include "typology/treebank.hpp"

namespace typology {

enum class CaseSystem { None, Unambiguous, Syncretic, ArgumentOnly };
enum class Role { Subject, Object, IndirectObject };

std::string_view to_string(CaseSystem c);  // "none", "unambiguous", "syncretic", "argument-only"
CaseSystem case_system_from_string(std::string_view s);

struct MarkingConfig {
  CaseSystem case_system = CaseSystem::None;
  bool mark_verbs = false;  // polypersonal agreement suffixes
  bool mark_nouns = false;  // case suffixes on argument heads

  // --case / --agreement flags: nouns are marked exactly when a case system
  // is selected.
  static MarkingConfig from_flags(CaseSystem c, bool agreement);
};

// Throws InvalidArgument for plurality NONE/UNKNOWN or case system NONE.
std::string case_suffix(Role role, Plurality plurality, CaseSystem system);

// Subject suffix then object suffix; the object part is omitted for NONE.
// Case system NONE spells verb agreement with the unambiguous suffixes.
std::string verb_agreement_suffix(Plurality subject, Plurality object, CaseSystem system);

// Removes English 3sg present marking: has->have, is->are, was->were,
// does->do, and regular -s/-es/-ies forms back to the lemma.
std::string demark_verb(const Token& token);

// Nouns to their lemma, object/oblique pronouns to the nominative base.
std::string demark_noun(const Token& token);

// Rewrites forms only; indices, heads and relations are untouched.
SentenceTree apply_marking(const SentenceTree& tree, const std::vector<ArgumentRecord>& records,
                           const MarkingConfig& config);

}  // namespace typology
