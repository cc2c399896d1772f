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

// Word and character n-gram vocabularies for the agreement predictor.

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typology/dataset.hpp"

namespace typology::net {

inline constexpr int kMinNgram = 1;
inline constexpr int kMaxNgram = 5;

// Every contiguous substring of 1..5 code points, one entry per position.
std::vector<std::string> char_ngrams(std::string_view word);

class Vocab {
 public:
  static constexpr int kOov = 0;

  // Words seen at least `word_min_count` times get their own row; every
  // n-gram of every training word is kept. The placeholder is skipped.
  static Vocab build(const std::vector<PredictionInstance>& instances, int word_min_count = 1);

  int word_id(std::string_view word) const;
  // Known n-grams of `word`; unseen ones are dropped.
  std::vector<int> ngram_ids(std::string_view word) const;

  int word_rows() const { return static_cast<int>(words_.size()) + 1; }
  int ngram_rows() const { return static_cast<int>(ngrams_.size()); }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::string>& ngrams() const { return ngrams_; }

  void add_word(std::string word);
  void add_ngram(std::string ngram);

 private:
  std::vector<std::string> words_;
  std::vector<std::string> ngrams_;
  std::unordered_map<std::string, int> word_index_;
  std::unordered_map<std::string, int> ngram_index_;
};

}  // namespace typology::net
