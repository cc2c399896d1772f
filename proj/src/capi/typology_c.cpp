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


#include "typology/typology.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "typology/corpusgen.hpp"
#include "typology/dataset.hpp"
#include "typology/error.hpp"
#include "typology/net/checkpoint.hpp"
#include "typology/net/metrics.hpp"
#include "typology/net/train.hpp"
#include "typology/pipeline.hpp"
#include "typology/treebank.hpp"

struct typo_treebank {
  typology::Treebank tb;
  std::vector<std::string> warnings;
};

struct typo_instances {
  std::vector<typology::PredictionInstance> items;
};

struct typo_model {
  typology::net::Model model;
};

namespace {

thread_local std::string g_last_error;

typo_status fail(typo_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
typo_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return TYPO_OK;
  } catch (const typology::ParseError& e) {
    return fail(TYPO_ERR_PARSE, e.what());
  } catch (const typology::IoError& e) {
    return fail(TYPO_ERR_IO, e.what());
  } catch (const typology::EmptyInputError& e) {
    return fail(TYPO_ERR_EMPTY, e.what());
  } catch (const typology::NumericError& e) {
    return fail(TYPO_ERR_NUMERIC, e.what());
  } catch (const typology::InvalidArgument& e) {
    return fail(TYPO_ERR_INVALID_ARG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TYPO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TYPO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TYPO_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw typology::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

typo_instances* wrap(std::vector<typology::PredictionInstance> v) {
  return new typo_instances{std::move(v)};
}

}  // namespace

extern "C" {

const char* typo_version(void) { return "1.0.0"; }

const char* typo_last_error(void) { return g_last_error.c_str(); }

const char* typo_status_string(typo_status status) {
  switch (status) {
    case TYPO_OK:
      return "ok";
    case TYPO_ERR_PARSE:
      return "parse error";
    case TYPO_ERR_IO:
      return "i/o error";
    case TYPO_ERR_EMPTY:
      return "empty input";
    case TYPO_ERR_NUMERIC:
      return "numeric failure";
    case TYPO_ERR_INVALID_ARG:
      return "invalid argument";
    case TYPO_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void typo_string_free(char* s) { std::free(s); }

typo_status typo_treebank_parse(const char* text, size_t length, const char* source_name,
                                typo_treebank** out) {
  return guarded([&] {
    require(out && (text || length == 0), "null argument");
    *out = nullptr;
    auto h = std::make_unique<typo_treebank>();
    h->tb = typology::parse_conllu(std::string_view(text ? text : "", length),
                                   source_name ? source_name : "<memory>", &h->warnings);
    *out = h.release();
  });
}

typo_status typo_treebank_load(const char* path, typo_treebank** out) {
  return guarded([&] {
    require(out && path, "null argument");
    *out = nullptr;
    auto h = std::make_unique<typo_treebank>();
    h->tb = typology::load_conllu(path, &h->warnings);
    *out = h.release();
  });
}

typo_status typo_treebank_save(const typo_treebank* tb, const char* path) {
  return guarded([&] {
    require(tb && path, "null argument");
    typology::write_file_atomically(path, typology::serialize_conllu(tb->tb));
  });
}

typo_status typo_treebank_serialize(const typo_treebank* tb, char** out) {
  return guarded([&] {
    require(tb && out, "null argument");
    *out = dup_string(typology::serialize_conllu(tb->tb));
  });
}

size_t typo_treebank_size(const typo_treebank* tb) { return tb ? tb->tb.sentences.size() : 0; }

size_t typo_treebank_warning_count(const typo_treebank* tb) { return tb ? tb->warnings.size() : 0; }

const char* typo_treebank_warning(const typo_treebank* tb, size_t i) {
  if (!tb || i >= tb->warnings.size()) return nullptr;
  return tb->warnings[i].c_str();
}

void typo_treebank_free(typo_treebank* tb) { delete tb; }

void typo_toy_spec_default(typo_toy_spec* spec) {
  if (!spec) return;
  const typology::ToySpec d;
  spec->sentences = d.sentences;
  spec->transitive_fraction = d.transitive_fraction;
  spec->modifier_attractor_probability = d.modifier_attractor_probability;
  spec->neutral_modifier_probability = d.neutral_modifier_probability;
  spec->relative_clause_probability = d.relative_clause_probability;
  spec->embedding_probability = d.embedding_probability;
  spec->max_depth = d.max_depth;
  spec->pronoun_probability = d.pronoun_probability;
  spec->adjective_probability = d.adjective_probability;
  spec->adverb_probability = d.adverb_probability;
  spec->complementizer_probability = d.complementizer_probability;
  spec->seed = d.seed;
  spec->lexicon_path = nullptr;
}

typo_status typo_toygen(const typo_toy_spec* spec, typo_treebank** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = nullptr;
    typology::ToySpec s;
    s.sentences = spec->sentences;
    s.transitive_fraction = spec->transitive_fraction;
    s.modifier_attractor_probability = spec->modifier_attractor_probability;
    s.neutral_modifier_probability = spec->neutral_modifier_probability;
    s.relative_clause_probability = spec->relative_clause_probability;
    s.embedding_probability = spec->embedding_probability;
    s.max_depth = spec->max_depth;
    s.pronoun_probability = spec->pronoun_probability;
    s.adjective_probability = spec->adjective_probability;
    s.adverb_probability = spec->adverb_probability;
    s.complementizer_probability = spec->complementizer_probability;
    s.seed = spec->seed;
    if (spec->lexicon_path) s.lexicon = typology::Lexicon::load(spec->lexicon_path);
    auto h = std::make_unique<typo_treebank>();
    h->tb = typology::generate(s);
    *out = h.release();
  });
}

void typo_language_default(typo_language* lang) {
  if (!lang) return;
  lang->order = "unchanged";
  lang->case_system = "none";
  lang->agreement = 0;
  lang->seed = 0;
  lang->threads = 1;
}

typo_status typo_compile(const typo_treebank* in, const typo_language* lang,
                         typo_treebank** out_treebank, typo_instances** out_instances,
                         char** report_json) {
  return guarded([&] {
    require(in && lang && lang->order && lang->case_system, "null argument");
    if (out_treebank) *out_treebank = nullptr;
    if (out_instances) *out_instances = nullptr;
    if (report_json) *report_json = nullptr;
    typology::LanguageConfig cfg;
    cfg.order = typology::core_order_from_string(lang->order);
    cfg.marking = typology::MarkingConfig::from_flags(
        typology::case_system_from_string(lang->case_system), lang->agreement != 0);
    cfg.seed = lang->seed;
    typology::CompiledCorpus c = typology::compile_treebank(in->tb, cfg, lang->threads);
    std::string report;
    if (report_json)
      report = nlohmann::json{{"sentences", c.treebank.sentences.size()},
                              {"subject_bearing", c.stats.subject_bearing},
                              {"xcomp_excluded", c.stats.xcomp_excluded},
                              {"unknown_dropped", c.stats.unknown_dropped},
                              {"emitted", c.stats.emitted}}
                   .dump();
    std::unique_ptr<typo_treebank> tb;
    std::unique_ptr<typo_instances> inst;
    if (out_treebank) tb.reset(new typo_treebank{std::move(c.treebank), in->warnings});
    if (out_instances) inst.reset(wrap(std::move(c.instances)));
    char* rep = report_json ? dup_string(report) : nullptr;
    if (out_treebank) *out_treebank = tb.release();
    if (out_instances) *out_instances = inst.release();
    if (report_json) *report_json = rep;
  });
}

typo_status typo_instances_load(const char* path, typo_instances** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = wrap(typology::load_instances(path));
  });
}

typo_status typo_instances_save(const typo_instances* set, const char* path) {
  return guarded([&] {
    require(set && path, "null argument");
    typology::save_instances(path, set->items);
  });
}

size_t typo_instances_size(const typo_instances* set) { return set ? set->items.size() : 0; }

typo_status typo_instances_stats(const typo_instances* set, char** out_json) {
  return guarded([&] {
    require(set && out_json, "null argument");
    const typology::CorpusStats s = typology::corpus_stats(set->items);
    *out_json = dup_string(nlohmann::json{{"instances", s.instances},
                                          {"transitive", s.transitive},
                                          {"transitive_fraction", s.transitive_fraction()},
                                          {"subject_attractors", s.subject_attractors},
                                          {"object_attractors", s.object_attractors},
                                          {"non_object_attractors", s.non_object_attractors},
                                          {"subject_attractor_percent", s.subject_attractor_percent()},
                                          {"object_attractor_percent", s.object_attractor_percent()},
                                          {"non_object_attractor_percent",
                                           s.non_object_attractor_percent()}}
                               .dump());
  });
}

typo_status typo_instances_concat(const typo_instances* const* parts, size_t n,
                                  typo_instances** out) {
  return guarded([&] {
    require(out && (parts || n == 0), "null argument");
    *out = nullptr;
    std::vector<typology::PredictionInstance> all;
    for (size_t i = 0; i < n; ++i) {
      require(parts[i] != nullptr, "null part");
      all.insert(all.end(), parts[i]->items.begin(), parts[i]->items.end());
    }
    *out = wrap(std::move(all));
  });
}

typo_status typo_split_standard(const typo_instances* set, uint64_t seed, typo_instances** train,
                                typo_instances** dev, typo_instances** test) {
  return guarded([&] {
    require(set && train && dev && test, "null argument");
    *train = *dev = *test = nullptr;
    typology::StandardSplit s = typology::split_standard(set->items, seed);
    std::unique_ptr<typo_instances> a(wrap(std::move(s.train)));
    std::unique_ptr<typo_instances> b(wrap(std::move(s.dev)));
    std::unique_ptr<typo_instances> c(wrap(std::move(s.test)));
    *train = a.release();
    *dev = b.release();
    *test = c.release();
  });
}

typo_status typo_split_poverty_of_stimulus(const typo_instances* set, typo_instances** train,
                                           typo_instances** object_attractor,
                                           typo_instances** object_non_attractor,
                                           typo_instances** non_object_attractor) {
  return guarded([&] {
    require(set && train && object_attractor && object_non_attractor && non_object_attractor,
            "null argument");
    *train = *object_attractor = *object_non_attractor = *non_object_attractor = nullptr;
    typology::PovStimSplit s = typology::split_poverty_of_stimulus(set->items);
    std::unique_ptr<typo_instances> a(wrap(std::move(s.train)));
    std::unique_ptr<typo_instances> b(wrap(std::move(s.test_object_attractor)));
    std::unique_ptr<typo_instances> c(wrap(std::move(s.test_object_non_attractor)));
    std::unique_ptr<typo_instances> d(wrap(std::move(s.test_non_object_attractor)));
    *train = a.release();
    *object_attractor = b.release();
    *object_non_attractor = c.release();
    *non_object_attractor = d.release();
  });
}

void typo_instances_free(typo_instances* set) { delete set; }

void typo_hyper_default(typo_hyper* hyper) {
  if (!hyper) return;
  const typology::net::Hyper d;
  hyper->learning_rate = d.learning_rate;
  hyper->beta1 = d.beta1;
  hyper->beta2 = d.beta2;
  hyper->epsilon = d.epsilon;
  hyper->batch_size = d.batch_size;
  hyper->max_epochs = d.max_epochs;
  hyper->patience = d.patience;
  hyper->word_min_count = d.word_min_count;
  hyper->embedding_dim = d.shape.embedding_dim;
  hyper->hidden = d.shape.hidden;
  hyper->mlp1 = d.shape.mlp1;
  hyper->mlp2 = d.shape.mlp2;
  hyper->mode = "joint";
  hyper->seed = d.seed;
}

typo_status typo_train(const typo_instances* train, const typo_instances* dev,
                       const typo_hyper* hyper, typo_epoch_callback on_epoch, void* user,
                       typo_model** out, char** history_json) {
  return guarded([&] {
    require(train && hyper && out, "null argument");
    *out = nullptr;
    if (history_json) *history_json = nullptr;
    typology::net::Hyper h;
    h.learning_rate = hyper->learning_rate;
    h.beta1 = hyper->beta1;
    h.beta2 = hyper->beta2;
    h.epsilon = hyper->epsilon;
    h.batch_size = hyper->batch_size;
    h.max_epochs = hyper->max_epochs;
    h.patience = hyper->patience;
    h.word_min_count = hyper->word_min_count;
    h.shape = {hyper->embedding_dim, hyper->hidden, hyper->mlp1, hyper->mlp2};
    h.mode = typology::net::mode_from_string(hyper->mode ? hyper->mode : "joint");
    h.seed = hyper->seed;
    static const std::vector<typology::PredictionInstance> kNone;
    typology::net::EpochCallback cb;
    if (on_epoch)
      cb = [&](const typology::net::EpochRecord& r) {
        on_epoch(r.epoch, r.train_loss, r.dev_score, user);
      };
    typology::net::TrainResult r = typology::net::train(train->items, dev ? dev->items : kNone, h, cb);
    std::string history;
    if (history_json) {
      nlohmann::json epochs = nlohmann::json::array();
      for (const auto& e : r.history)
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"dev_subject_accuracy", e.dev_subject_accuracy},
                          {"dev_object_label_accuracy", e.dev_object_label_accuracy},
                          {"dev_score", e.dev_score}});
      history = nlohmann::json{{"best_epoch", r.best_epoch}, {"epochs", std::move(epochs)}}.dump();
    }
    auto m = std::make_unique<typo_model>(typo_model{std::move(r.model)});
    char* hist = history_json ? dup_string(history) : nullptr;
    *out = m.release();
    if (history_json) *history_json = hist;
  });
}

typo_status typo_model_save(const typo_model* model, const char* path) {
  return guarded([&] {
    require(model && path, "null argument");
    typology::net::save_model(path, model->model);
  });
}

typo_status typo_model_load(const char* path, typo_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new typo_model{typology::net::load_model(path)};
  });
}

typo_status typo_evaluate(const typo_model* model, const typo_instances* set, char** metrics_json) {
  return guarded([&] {
    require(model && set && metrics_json, "null argument");
    *metrics_json = nullptr;
    *metrics_json =
        dup_string(typology::net::metrics_to_json(typology::net::evaluate(model->model, set->items)));
  });
}

typo_status typo_predictions_save(const typo_model* model, const typo_instances* set,
                                  const char* path) {
  return guarded([&] {
    require(model && set && path, "null argument");
    if (set->items.empty()) throw typology::EmptyInputError("no instances to predict");
    const auto preds = typology::net::predict(model->model, set->items);
    typology::write_file_atomically(path, typology::net::predictions_to_jsonl(set->items, preds));
  });
}

void typo_model_free(typo_model* model) { delete model; }

}  // extern "C"
