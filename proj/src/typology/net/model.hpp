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

// Bidirectional LSTM agreement predictor with twin MLP heads.
//
// Each instance is split at the placeholder: the left context is read left
// to right by one LSTM and the right context right to left by another. The
// two final states are concatenated and fed to a subject head (sg/pl) and an
// object head (sg/pl/none). Batches are right-aligned so every sequence ends
// on the last time step; steps before a sequence starts are masked to the
// zero state.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "typology/dataset.hpp"
#include "typology/net/vocab.hpp"

namespace typology::net {

enum class Mode { Joint, Subject, Object };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

struct ModelShape {
  int embedding_dim = 100;
  int hidden = 150;
  int mlp1 = 100;
  int mlp2 = 50;

  void validate() const;
};

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename M>
struct NamedTensor {
  const char* name;
  M* value;
};

// Embedding tables store one column per row id. LSTM gates are stacked
// i, f, g, o. Biases are n x 1.
template <typename S>
struct Params {
  Mat<S> word_emb, ngram_emb;
  Mat<S> fw_W, fw_U, fw_b;
  Mat<S> bw_W, bw_U, bw_b;
  Mat<S> subj_W1, subj_b1, subj_W2, subj_b2, subj_W3, subj_b3;
  Mat<S> obj_W1, obj_b1, obj_W2, obj_b2, obj_W3, obj_b3;

  std::vector<NamedTensor<Mat<S>>> tensors();
  std::vector<NamedTensor<const Mat<S>>> tensors() const;

  void set_zero();
  Params zeros_like() const;
  template <typename T>
  Params<T> cast() const;
  bool all_finite() const;
  std::size_t size() const;
};

template <typename S>
template <typename T>
Params<T> Params<S>::cast() const {
  Params<T> out;
  auto src = tensors();
  auto dst = out.tensors();
  for (std::size_t i = 0; i < src.size(); ++i) *dst[i].value = src[i].value->template cast<T>();
  return out;
}

// Embeddings uniform in +-0.1, weights uniform in +-1/sqrt(fan_in), biases
// zero except the forget gate, which starts at 1.
template <typename S>
Params<S> init_params(const ModelShape& shape, int word_rows, int ngram_rows, std::uint64_t seed);

// Word row (or the OOV row) plus the rows of every known n-gram.
template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> embed_word(const Params<S>& p, const Vocab& vocab,
                                               std::string_view word);

// Distinct token strings of a dataset, resolved against a vocabulary once.
struct TypeTable {
  std::vector<int> word;
  std::vector<std::vector<int>> ngrams;
};

struct EncodedInstance {
  std::vector<int> left;   // type ids, reading order
  std::vector<int> right;  // type ids, reversed (nearest the verb last)
  int subject = 0;         // 0 sg, 1 pl
  int object = 2;          // 0 sg, 1 pl, 2 none
};

struct EncodedSet {
  TypeTable types;
  std::vector<EncodedInstance> items;
};

EncodedSet encode(const Vocab& vocab, const std::vector<PredictionInstance>& instances);

int subject_label(Plurality p);
int object_label(Plurality p);

// Test hook for the gradient checker: corrupts one term of the backward pass.
struct BackwardFault {
  bool drop_forget_gate_in_cell_gradient = false;
};

template <typename S>
struct DirectionCache {
  int steps = 0;
  Mat<S> x;      // D x steps*B
  Mat<S> mask;   // 1 x steps*B
  Mat<S> gates;  // 4H x steps*B, after nonlinearity
  Mat<S> c;      // H x (steps+1)*B, block 0 is the initial zero state
  Mat<S> h;
  std::vector<int> local;  // column -> unique-type slot or -1
};

template <typename S>
struct HeadCache {
  Mat<S> a1, a2, probs;
};

template <typename S>
struct Workspace {
  std::vector<int> batch;
  std::vector<int> unique_types;
  Mat<S> emb;
  DirectionCache<S> fw, bw;
  Mat<S> z;
  HeadCache<S> subj, obj;
};

// Mean loss over the batch. Subject mode drops the object term and vice versa.
template <typename S>
S forward(const Params<S>& p, const EncodedSet& data, const std::vector<int>& batch, Mode mode,
          Workspace<S>& ws);

// Adds the gradient of the last forward's loss to `grad`.
template <typename S>
void backward(const Params<S>& p, const EncodedSet& data, Mode mode, Workspace<S>& ws,
              Params<S>& grad, const BackwardFault& fault = {});

// Trained weights together with everything needed to run them on new text.
struct Model {
  ModelShape shape;
  Mode mode = Mode::Joint;
  Vocab vocab;
  Params<float> params;
};

}  // namespace typology::net
