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


#include "typology/net/vocab.hpp"

#include <map>

#include "typology/error.hpp"

namespace typology::net {
namespace {

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::vector<std::string> char_ngrams(std::string_view word) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < word.size();) {
    starts.push_back(i);
    i += utf8_length(static_cast<unsigned char>(word[i]));
  }
  const std::size_t n = starts.size();
  starts.push_back(word.size());
  std::vector<std::string> out;
  for (std::size_t len = kMinNgram; len <= static_cast<std::size_t>(kMaxNgram) && len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t b = starts[i];
      const std::size_t e = std::min(starts[i + len], word.size());
      out.emplace_back(word.substr(b, e - b));
    }
  return out;
}

Vocab Vocab::build(const std::vector<PredictionInstance>& instances, int word_min_count) {
  std::map<std::string, int> counts;
  for (const PredictionInstance& inst : instances)
    for (const std::string& t : inst.tokens)
      if (t != kVerbPlaceholder) ++counts[t];
  Vocab v;
  for (const auto& [word, count] : counts) {
    if (count >= word_min_count) v.add_word(word);
    for (std::string& ng : char_ngrams(word)) v.add_ngram(std::move(ng));
  }
  return v;
}

int Vocab::word_id(std::string_view word) const {
  auto it = word_index_.find(std::string(word));
  return it == word_index_.end() ? kOov : it->second;
}

std::vector<int> Vocab::ngram_ids(std::string_view word) const {
  std::vector<int> ids;
  for (const std::string& ng : char_ngrams(word)) {
    auto it = ngram_index_.find(ng);
    if (it != ngram_index_.end()) ids.push_back(it->second);
  }
  return ids;
}

void Vocab::add_word(std::string word) {
  if (word_index_.count(word)) throw ParseError("duplicate vocabulary word '" + word + "'");
  word_index_.emplace(word, static_cast<int>(words_.size()) + 1);
  words_.push_back(std::move(word));
}

void Vocab::add_ngram(std::string ngram) {
  if (ngram_index_.count(ngram)) return;
  ngram_index_.emplace(ngram, static_cast<int>(ngrams_.size()));
  ngrams_.push_back(std::move(ngram));
}

}  // namespace typology::net
