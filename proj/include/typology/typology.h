/* Copyright 2026 The Typology Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/* C interface to the typology library: synthetic word-order and case-marking
 * variants of dependency treebanks, agreement prediction datasets, and the
 * BiLSTM agreement predictor.
 *
 * Every fallible call returns a typo_status. On failure the message is
 * available from typo_last_error() on the calling thread until the next call.
 * Strings returned through char** belong to the caller and are released
 * with typo_string_free(). Handles are released with their *_free function;
 * passing NULL to any *_free function is a no-op. */

#ifndef TYPOLOGY_TYPOLOGY_H_
#define TYPOLOGY_TYPOLOGY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TYPOLOGY_BUILDING_LIBRARY)
#define TYPOLOGY_API __declspec(dllexport)
#else
#define TYPOLOGY_API __declspec(dllimport)
#endif
#else
#define TYPOLOGY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum typo_status {
  TYPO_OK = 0,
  TYPO_ERR_PARSE = 1,
  TYPO_ERR_IO = 2,
  TYPO_ERR_EMPTY = 3,
  TYPO_ERR_NUMERIC = 4,
  TYPO_ERR_INVALID_ARG = 5,
  TYPO_ERR_INTERNAL = 6
} typo_status;

typedef struct typo_treebank typo_treebank;
typedef struct typo_instances typo_instances;
typedef struct typo_model typo_model;

TYPOLOGY_API const char* typo_version(void);
TYPOLOGY_API const char* typo_last_error(void);
TYPOLOGY_API const char* typo_status_string(typo_status status);
TYPOLOGY_API void typo_string_free(char* s);

/* ---- treebanks ---------------------------------------------------------- */

TYPOLOGY_API typo_status typo_treebank_parse(const char* text, size_t length,
                                             const char* source_name, typo_treebank** out);
TYPOLOGY_API typo_status typo_treebank_load(const char* path, typo_treebank** out);
TYPOLOGY_API typo_status typo_treebank_save(const typo_treebank* tb, const char* path);
TYPOLOGY_API typo_status typo_treebank_serialize(const typo_treebank* tb, char** out);
TYPOLOGY_API size_t typo_treebank_size(const typo_treebank* tb);
/* Messages for skipped multiword-token and empty-node lines. */
TYPOLOGY_API size_t typo_treebank_warning_count(const typo_treebank* tb);
TYPOLOGY_API const char* typo_treebank_warning(const typo_treebank* tb, size_t i);
TYPOLOGY_API void typo_treebank_free(typo_treebank* tb);

/* ---- synthetic corpora -------------------------------------------------- */

typedef struct typo_toy_spec {
  size_t sentences;
  double transitive_fraction;
  double modifier_attractor_probability;
  double neutral_modifier_probability;
  double relative_clause_probability;
  double embedding_probability;
  int max_depth;
  double pronoun_probability;
  double adjective_probability;
  double adverb_probability;
  double complementizer_probability;
  uint64_t seed;
  const char* lexicon_path; /* NULL selects the bundled lexicon */
} typo_toy_spec;

TYPOLOGY_API void typo_toy_spec_default(typo_toy_spec* spec);
TYPOLOGY_API typo_status typo_toygen(const typo_toy_spec* spec, typo_treebank** out);

/* ---- synthetic languages ------------------------------------------------ */

typedef struct typo_language {
  const char* order;       /* svo sov vos vso osv ovs flexible unchanged */
  const char* case_system; /* none unambiguous syncretic argument-only */
  int agreement;           /* nonzero: polypersonal suffixes on verbs */
  uint64_t seed;           /* drives the per-sentence order of "flexible" */
  unsigned threads;
} typo_language;

TYPOLOGY_API void typo_language_default(typo_language* lang);

/* Reorders and marks every sentence and extracts one prediction instance per
 * argument record. Either output pointer may be NULL. `report_json`, when not
 * NULL, receives the argument-collection counters. */
TYPOLOGY_API typo_status typo_compile(const typo_treebank* in, const typo_language* lang,
                                      typo_treebank** out_treebank,
                                      typo_instances** out_instances, char** report_json);

/* ---- prediction instances ----------------------------------------------- */

TYPOLOGY_API typo_status typo_instances_load(const char* path, typo_instances** out);
TYPOLOGY_API typo_status typo_instances_save(const typo_instances* set, const char* path);
TYPOLOGY_API size_t typo_instances_size(const typo_instances* set);
/* Instance counts, transitive fraction and attractor percentages. */
TYPOLOGY_API typo_status typo_instances_stats(const typo_instances* set, char** out_json);
TYPOLOGY_API typo_status typo_instances_concat(const typo_instances* const* parts, size_t n,
                                               typo_instances** out);
TYPOLOGY_API typo_status typo_split_standard(const typo_instances* set, uint64_t seed,
                                             typo_instances** train, typo_instances** dev,
                                             typo_instances** test);
TYPOLOGY_API typo_status typo_split_poverty_of_stimulus(const typo_instances* set,
                                                        typo_instances** train,
                                                        typo_instances** object_attractor,
                                                        typo_instances** object_non_attractor,
                                                        typo_instances** non_object_attractor);
TYPOLOGY_API void typo_instances_free(typo_instances* set);

/* ---- agreement predictor ------------------------------------------------ */

typedef struct typo_hyper {
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  int batch_size;
  int max_epochs;
  int patience;
  int word_min_count;
  int embedding_dim;
  int hidden;
  int mlp1;
  int mlp2;
  const char* mode; /* joint subject object */
  uint64_t seed;
} typo_hyper;

TYPOLOGY_API void typo_hyper_default(typo_hyper* hyper);

typedef void (*typo_epoch_callback)(int epoch, double train_loss, double dev_score, void* user);

/* `dev` may be NULL or empty, in which case every epoch runs and the final
 * parameters are kept. `history_json` may be NULL. */
TYPOLOGY_API typo_status typo_train(const typo_instances* train, const typo_instances* dev,
                                    const typo_hyper* hyper, typo_epoch_callback on_epoch,
                                    void* user, typo_model** out, char** history_json);
TYPOLOGY_API typo_status typo_model_save(const typo_model* model, const char* path);
TYPOLOGY_API typo_status typo_model_load(const char* path, typo_model** out);
TYPOLOGY_API typo_status typo_evaluate(const typo_model* model, const typo_instances* set,
                                       char** metrics_json);
/* Writes one JSON line per instance with predictions and probabilities. */
TYPOLOGY_API typo_status typo_predictions_save(const typo_model* model,
                                               const typo_instances* set, const char* path);
TYPOLOGY_API void typo_model_free(typo_model* model);

#ifdef __cplusplus
}
#endif

#endif /* TYPOLOGY_TYPOLOGY_H_ */
