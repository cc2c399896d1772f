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

// One synthetic language = word order + marking + seed. Compiling a treebank
// into it reorders every sentence, collects argument records on the
// reordered tree, attaches morphology and emits prediction instances.

#pragma once

#include <cstdint>
#include <vector>

#include "typology/arguments.hpp"
#include "typology/dataset.hpp"
#include "typology/morph.hpp"
#include "typology/reorder.hpp"
#include "typology/treebank.hpp"

namespace typology {

struct LanguageConfig {
  CoreOrder order = CoreOrder::Unchanged;
  MarkingConfig marking;
  std::uint64_t seed = 0;
};

struct CompiledSentence {
  SentenceTree tree;  // reordered and marked
  std::vector<ArgumentRecord> records;
  std::vector<PredictionInstance> instances;
  CoreOrder order = CoreOrder::Unchanged;  // resolved for this sentence
  ArgumentStats stats;
};

CompiledSentence compile_sentence(const SentenceTree& tree, const LanguageConfig& config,
                                  std::uint64_t ordinal);

struct CompiledCorpus {
  Treebank treebank;
  std::vector<PredictionInstance> instances;
  ArgumentStats stats;
};

// Sentences are independent; `threads` > 1 splits them into contiguous
// chunks and the output does not depend on the thread count.
CompiledCorpus compile_treebank(const Treebank& tb, const LanguageConfig& config,
                                unsigned threads = 1);

}  // namespace typology
