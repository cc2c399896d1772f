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

#include "typology/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace typology {
namespace {

void refresh_text_comment(SentenceTree& tree) {
  for (std::string& c : tree.comments) {
    std::string_view body = c;
    while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    if (body.starts_with("text =") || body.starts_with("text=")) c = " text = " + tree.text();
  }
}

}  // namespace

CompiledSentence compile_sentence(const SentenceTree& tree, const LanguageConfig& config,
                                  std::uint64_t ordinal) {
  CompiledSentence out;
  out.order = resolve_order(config.order, config.seed, ordinal);
  SentenceTree reordered = reorder_sentence(tree, out.order);
  out.records = collect_records(reordered, &out.stats);
  out.tree = apply_marking(reordered, out.records, config.marking);
  refresh_text_comment(out.tree);
  out.instances = build_instances(
      out.tree, out.records,
      BuildConfig{std::string(to_string(out.order)),
                  std::string(to_string(config.marking.case_system))});
  return out;
}

CompiledCorpus compile_treebank(const Treebank& tb, const LanguageConfig& config,
                                unsigned threads) {
  const std::size_t n = tb.sentences.size();
  std::vector<CompiledSentence> compiled(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      compiled[i] = compile_sentence(tb.sentences[i], config, i);
  };
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  CompiledCorpus out;
  out.treebank.source_name = tb.source_name;
  out.treebank.sentences.reserve(n);
  for (CompiledSentence& c : compiled) {
    out.stats += c.stats;
    out.treebank.sentences.push_back(std::move(c.tree));
    for (PredictionInstance& inst : c.instances) out.instances.push_back(std::move(inst));
  }
  return out;
}

}  // namespace typology
