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

#include "typology/morph.hpp"

#include <cctype>
#include <map>

#include "typology/error.hpp"

namespace typology {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Carries over an initial capital from `original`.
std::string match_case(std::string_view original, std::string replacement) {
  if (!original.empty() && !replacement.empty() &&
      std::isupper(static_cast<unsigned char>(original.front())))
    replacement.front() =
        static_cast<char>(std::toupper(static_cast<unsigned char>(replacement.front())));
  return replacement;
}

const std::map<std::string, std::string>& irregular_verbs() {
  static const std::map<std::string, std::string> m = {
      {"has", "have"}, {"is", "are"}, {"was", "were"}, {"does", "do"}};
  return m;
}

const std::map<std::string, std::string>& nominative_pronouns() {
  static const std::map<std::string, std::string> m = {
      {"them", "they"}, {"they", "they"}, {"him", "he"}, {"he", "he"}, {"us", "we"},
      {"we", "we"},     {"me", "i"},      {"i", "i"},    {"her", "she"}, {"she", "she"},
      {"it", "it"}};
  return m;
}

bool is_regular_3sg(const std::string& form, const std::string& lemma) {
  if (lemma.empty() || form.size() <= lemma.size()) return false;
  if (form == lemma + "s" || form == lemma + "es") return true;
  return lemma.back() == 'y' && form == lemma.substr(0, lemma.size() - 1) + "ies";
}

}  // namespace

std::string_view to_string(CaseSystem c) {
  switch (c) {
    case CaseSystem::None:
      return "none";
    case CaseSystem::Unambiguous:
      return "unambiguous";
    case CaseSystem::Syncretic:
      return "syncretic";
    case CaseSystem::ArgumentOnly:
      return "argument-only";
  }
  return "none";
}

CaseSystem case_system_from_string(std::string_view s) {
  for (CaseSystem c : {CaseSystem::None, CaseSystem::Unambiguous, CaseSystem::Syncretic,
                       CaseSystem::ArgumentOnly})
    if (to_string(c) == s) return c;
  throw InvalidArgument("unknown case system '" + std::string(s) + "'");
}

MarkingConfig MarkingConfig::from_flags(CaseSystem c, bool agreement) {
  return MarkingConfig{c, agreement, c != CaseSystem::None};
}

std::string case_suffix(Role role, Plurality plurality, CaseSystem system) {
  if (!is_number(plurality))
    throw InvalidArgument("no case suffix for plurality " + std::string(to_string(plurality)));
  const bool sg = plurality == Plurality::Singular;
  switch (system) {
    case CaseSystem::None:
      throw InvalidArgument("case system 'none' has no suffixes");
    case CaseSystem::ArgumentOnly:
      return sg ? "kin" : "ker";
    case CaseSystem::Syncretic:
      if (role == Role::Object && !sg) return "kar";
      [[fallthrough]];
    case CaseSystem::Unambiguous:
      switch (role) {
        case Role::Subject:
          return sg ? "kar" : "kon";
        case Role::Object:
          return sg ? "kin" : "ker";
        case Role::IndirectObject:
          return sg ? "ken" : "kre";
      }
  }
  throw InvalidArgument("bad case system");
}

std::string verb_agreement_suffix(Plurality subject, Plurality object, CaseSystem system) {
  const CaseSystem spelled = system == CaseSystem::None ? CaseSystem::Unambiguous : system;
  std::string out = case_suffix(Role::Subject, subject, spelled);
  if (object != Plurality::None) out += case_suffix(Role::Object, object, spelled);
  return out;
}

std::string demark_verb(const Token& token) {
  const std::string form = lower(token.form);
  if (auto it = irregular_verbs().find(form); it != irregular_verbs().end())
    return match_case(token.form, it->second);
  const bool tagged_3sg = token.xpos == "VBZ" ||
                          (token.feat("Person") == "3" && token.feat("Number") == "Sing" &&
                           token.feat("Tense") == "Pres");
  const bool untagged = token.xpos.empty() || token.xpos == "_";
  const std::string lemma = lower(token.lemma);
  if ((tagged_3sg || untagged) && is_regular_3sg(form, lemma))
    return match_case(token.form, lemma);
  return token.form;
}

std::string demark_noun(const Token& token) {
  if (token.upos == "PRON") {
    const std::string form = lower(token.form);
    if (auto it = nominative_pronouns().find(form); it != nominative_pronouns().end()) {
      // "I" is the one pronoun written with a capital everywhere.
      if (it->second == "i") return "I";
      return match_case(token.form, it->second);
    }
    return token.form;
  }
  if (token.upos == "NOUN" || token.upos == "PROPN") {
    if (token.lemma.empty() || token.lemma == "_") return token.form;
    return match_case(token.form, token.lemma);
  }
  return token.form;
}

SentenceTree apply_marking(const SentenceTree& tree, const std::vector<ArgumentRecord>& records,
                           const MarkingConfig& config) {
  SentenceTree out = tree;
  if (!config.mark_verbs && !config.mark_nouns) return out;
  const int n = static_cast<int>(tree.size());
  auto check = [&](int index) {
    if (index < 1 || index > n)
      throw Error("record references missing token " + std::to_string(index) +
                  " in sentence " + tree.sent_id);
  };
  for (const ArgumentRecord& r : records) {
    check(r.verb);
    check(r.subject_head);
    if (r.object_head) check(*r.object_head);

    if (config.mark_verbs) {
      Token& v = out.token(r.verb);
      v.form = demark_verb(tree.token(r.verb)) +
               verb_agreement_suffix(r.subject_plurality, r.object_plurality, config.case_system);
    }
    if (config.mark_nouns && config.case_system != CaseSystem::None) {
      out.token(r.subject_head).form =
          demark_noun(tree.token(r.subject_head)) +
          case_suffix(Role::Subject, r.subject_plurality, config.case_system);
      if (r.object_head)
        out.token(*r.object_head).form =
            demark_noun(tree.token(*r.object_head)) +
            case_suffix(Role::Object, r.object_plurality, config.case_system);
    }
  }
  return out;
}

}  // namespace typology
