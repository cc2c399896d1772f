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

#include "typology/corpusgen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "typology/error.hpp"
#include "typology/lexicon_data.hpp"
#include "typology/reorder.hpp"

namespace typology {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// Builds one sentence left to right; heads are patched in once known.
class SentenceBuilder {
 public:
  int add(std::string form, std::string lemma, std::string upos, std::string xpos,
          std::vector<std::pair<std::string, std::string>> feats = {}) {
    Token t;
    t.index = static_cast<int>(tokens_.size()) + 1;
    t.form = std::move(form);
    t.lemma = std::move(lemma);
    t.upos = std::move(upos);
    t.xpos = std::move(xpos);
    t.feats = std::move(feats);
    tokens_.push_back(std::move(t));
    return tokens_.back().index;
  }
  void attach(int dependent, int head, std::string deprel) {
    Token& t = tokens_[dependent - 1];
    t.head = head;
    t.deprel = std::move(deprel);
  }
  std::vector<Token> take() { return std::move(tokens_); }

 private:
  std::vector<Token> tokens_;
};

std::vector<std::pair<std::string, std::string>> number_feats(Plurality p) {
  return {{"Number", p == Plurality::Plural ? "Plur" : "Sing"}};
}

class Generator {
 public:
  Generator(const ToySpec& spec, std::uint64_t ordinal)
      : spec_(spec), lex_(spec.lexicon), rng_(splitmix64(spec.seed ^ splitmix64(ordinal))) {}

  std::pair<std::vector<Token>, std::vector<ArgumentRecord>> sentence() {
    const int verb = clause(0, 0, "root");
    const int dot = b_.add(".", ".", "PUNCT", ".");
    b_.attach(dot, verb, "punct");
    std::sort(gold_.begin(), gold_.end(),
              [](const ArgumentRecord& a, const ArgumentRecord& b) { return a.verb < b.verb; });
    return {b_.take(), std::move(gold_)};
  }

 private:
  Plurality number() { return rng_.chance(0.5) ? Plurality::Plural : Plurality::Singular; }

  // Plain "the (adj) noun"; returns the noun.
  int noun_phrase(Plurality p, bool allow_adjective) {
    const int det = b_.add("the", "the", "DET", "DT", {{"Definite", "Def"}, {"PronType", "Art"}});
    int adj = 0;
    if (allow_adjective && rng_.chance(spec_.adjective_probability)) {
      const std::string& a = rng_.pick(lex_.adjectives);
      adj = b_.add(a, a, "ADJ", "JJ", {{"Degree", "Pos"}});
    }
    const Lexicon::Noun& n = rng_.pick(lex_.nouns);
    const bool pl = p == Plurality::Plural;
    const int noun = b_.add(pl ? n.plural : n.singular, n.singular, "NOUN", pl ? "NNS" : "NN",
                            number_feats(p));
    b_.attach(det, noun, "det");
    if (adj) b_.attach(adj, noun, "amod");
    return noun;
  }

  int pronoun(Plurality p, bool object) {
    static const std::vector<std::pair<std::string, std::string>> sg_subj = {
        {"he", "he"}, {"she", "she"}, {"it", "it"}};
    static const std::vector<std::pair<std::string, std::string>> pl_subj = {{"they", "they"},
                                                                            {"we", "we"}};
    static const std::vector<std::pair<std::string, std::string>> sg_obj = {
        {"him", "he"}, {"her", "she"}, {"it", "it"}};
    static const std::vector<std::pair<std::string, std::string>> pl_obj = {{"them", "they"},
                                                                           {"us", "we"}};
    const bool pl = p == Plurality::Plural;
    const auto& choice = rng_.pick(object ? (pl ? pl_obj : sg_obj) : (pl ? pl_subj : sg_subj));
    auto feats = number_feats(p);
    feats.emplace_back("PronType", "Prs");
    return b_.add(choice.first, choice.second, "PRON", "PRP", std::move(feats));
  }

  void prepositional_modifier(int head, Plurality p) {
    const std::string& prep = rng_.pick(lex_.prepositions);
    const int adp = b_.add(prep, prep, "ADP", "IN");
    const int noun = noun_phrase(p, false);
    b_.attach(adp, noun, "case");
    b_.attach(noun, head, "nmod");
  }

  int verb_token(const Lexicon::Verb& v, Plurality subject) {
    if (subject == Plurality::Plural)
      return b_.add(v.lemma, v.lemma, "VERB", "VBP",
                    {{"Mood", "Ind"}, {"Tense", "Pres"}, {"VerbForm", "Fin"}});
    return b_.add(v.third_singular, v.lemma, "VERB", "VBZ",
                  {{"Mood", "Ind"}, {"Number", "Sing"}, {"Person", "3"}, {"Tense", "Pres"},
                   {"VerbForm", "Fin"}});
  }

  void relative_clause(int head, Plurality p) {
    const int who = b_.add("who", "who", "PRON", "WP", {{"PronType", "Rel"}});
    const int verb = verb_token(rng_.pick(lex_.intransitive_verbs), p);
    b_.attach(who, verb, "nsubj");
    b_.attach(verb, head, "acl:relcl");
    if (rng_.chance(0.5)) prepositional_modifier(verb, number());
    gold_.push_back(ArgumentRecord{verb, who, p, std::nullopt, Plurality::None, ""});
  }

  // Subject with optional modifier; returns its head.
  int subject(Plurality p) {
    if (rng_.chance(spec_.pronoun_probability)) return pronoun(p, false);
    const int noun = noun_phrase(p, true);
    const double r = rng_.uniform();
    const double a = spec_.modifier_attractor_probability;
    const double n = a + spec_.neutral_modifier_probability;
    const double c = n + spec_.relative_clause_probability;
    if (r < a)
      prepositional_modifier(noun, opposite(p));
    else if (r < n)
      prepositional_modifier(noun, p);
    else if (r < c)
      relative_clause(noun, p);
    return noun;
  }

  int clause(int depth, int governor, const std::string& deprel) {
    const bool embeds = depth < spec_.max_depth && rng_.chance(spec_.embedding_probability);
    const Plurality sp = number();
    const int subj = subject(sp);
    if (embeds) {
      const int verb = verb_token(rng_.pick(lex_.clausal_verbs), sp);
      b_.attach(subj, verb, "nsubj");
      b_.attach(verb, governor, deprel);
      gold_.push_back(ArgumentRecord{verb, subj, sp, std::nullopt, Plurality::None, ""});
      int mark = 0;
      if (rng_.chance(spec_.complementizer_probability)) mark = b_.add("that", "that", "SCONJ", "IN");
      const int inner = clause(depth + 1, verb, "ccomp");
      if (mark) b_.attach(mark, inner, "mark");
      return verb;
    }

    const bool transitive = rng_.chance(spec_.object_probability());
    const Lexicon::Verb& v =
        transitive ? rng_.pick(lex_.transitive_verbs)
                   : rng_.pick(rng_.chance(0.5) ? lex_.intransitive_verbs : lex_.transitive_verbs);
    const int verb = verb_token(v, sp);
    b_.attach(subj, verb, "nsubj");
    b_.attach(verb, governor, deprel);
    ArgumentRecord r{verb, subj, sp, std::nullopt, Plurality::None, ""};
    if (transitive) {
      const Plurality op = number();
      const int obj = rng_.chance(spec_.pronoun_probability) ? pronoun(op, true)
                                                               : noun_phrase(op, true);
      b_.attach(obj, verb, "dobj");
      r.object_head = obj;
      r.object_plurality = op;
    }
    if (rng_.chance(spec_.adverb_probability)) {
      const std::string& a = rng_.pick(lex_.adverbs);
      b_.attach(b_.add(a, a, "ADV", "RB"), verb, "advmod");
    }
    gold_.push_back(r);
    return verb;
  }

  const ToySpec& spec_;
  const Lexicon& lex_;
  Rng rng_;
  SentenceBuilder b_;
  std::vector<ArgumentRecord> gold_;
};

}  // namespace

Lexicon Lexicon::parse(std::istream& in, const std::string& name) {
  Lexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 3 || cols[0].empty())
      throw ParseError(name + ":" + std::to_string(line_no) + ": expected lemma<TAB>pos<TAB>form");
    const std::string& pos = cols[1];
    if (pos == "NOUN")
      lex.nouns.push_back({cols[0], cols[2]});
    else if (pos == "TVERB")
      lex.transitive_verbs.push_back({cols[0], cols[2]});
    else if (pos == "IVERB")
      lex.intransitive_verbs.push_back({cols[0], cols[2]});
    else if (pos == "CVERB")
      lex.clausal_verbs.push_back({cols[0], cols[2]});
    else if (pos == "ADP")
      lex.prepositions.push_back(cols[0]);
    else if (pos == "ADJ")
      lex.adjectives.push_back(cols[0]);
    else if (pos == "ADV")
      lex.adverbs.push_back(cols[0]);
    else
      throw ParseError(name + ":" + std::to_string(line_no) + ": unknown pos '" + pos + "'");
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse(in, path);
}

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = [] {
    std::istringstream in(detail::kBundledLexicon);
    return parse(in, "<bundled lexicon>");
  }();
  return lex;
}

void ToySpec::validate() const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(what) + " must be in [0, 1]");
  };
  prob(transitive_fraction, "transitive fraction");
  prob(modifier_attractor_probability, "modifier-attractor probability");
  prob(neutral_modifier_probability, "neutral-modifier probability");
  prob(relative_clause_probability, "relative-clause probability");
  prob(embedding_probability, "embedding probability");
  prob(pronoun_probability, "pronoun probability");
  prob(adjective_probability, "adjective probability");
  prob(adverb_probability, "adverb probability");
  prob(complementizer_probability, "complementizer probability");
  if (modifier_attractor_probability + neutral_modifier_probability +
          relative_clause_probability > 1.0 + 1e-12)
    throw InvalidArgument("subject modifier probabilities sum to more than 1");
  if (max_depth < 0) throw InvalidArgument("max depth must be >= 0");
  if (lexicon.nouns.empty() || lexicon.transitive_verbs.empty() ||
      lexicon.intransitive_verbs.empty() || lexicon.prepositions.empty() ||
      lexicon.adjectives.empty() || lexicon.adverbs.empty() ||
      (max_depth > 0 && embedding_probability > 0 && lexicon.clausal_verbs.empty()))
    throw InvalidArgument("lexicon lacks a required word class");
}

double ToySpec::object_probability() const {
  // Only the innermost clause of each sentence can take an object; the
  // embedding verbs and relative-clause verbs above it are intransitive.
  double embedded = 0.0;
  double level = 1.0;
  for (int d = 0; d < max_depth; ++d) {
    level *= embedding_probability;
    embedded += level;
  }
  const double subjects = 1.0 + embedded;
  const double relatives = subjects * (1.0 - pronoun_probability) * relative_clause_probability;
  const double records = 1.0 + embedded + relatives;
  return std::min(1.0, transitive_fraction * records);
}

ToyCorpus generate_with_gold(const ToySpec& spec) {
  spec.validate();
  ToyCorpus out;
  out.treebank.source_name = "toy";
  out.treebank.sentences.reserve(spec.sentences);
  out.gold.reserve(spec.sentences);
  for (std::size_t i = 0; i < spec.sentences; ++i) {
    auto [tokens, gold] = Generator(spec, i).sentence();
    SentenceTree tree;
    tree.sent_id = "toy-" + std::to_string(i + 1);
    tree.tokens = std::move(tokens);
    tree.comments.push_back(" text = " + tree.text());
    for (ArgumentRecord& r : gold) r.sent_id = tree.sent_id;
    validate(tree);
    out.treebank.sentences.push_back(std::move(tree));
    out.gold.push_back(std::move(gold));
  }
  return out;
}

Treebank generate(const ToySpec& spec) { return generate_with_gold(spec).treebank; }

}  // namespace typology
