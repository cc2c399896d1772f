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

// Adam training with dev-based early stopping.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "typology/dataset.hpp"
#include "typology/net/metrics.hpp"
#include "typology/net/model.hpp"

namespace typology::net {

struct Hyper {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 32;
  int max_epochs = 50;
  int patience = 5;
  int word_min_count = 1;
  ModelShape shape;
  Mode mode = Mode::Joint;
  std::uint64_t seed = 1;

  void validate() const;
};

template <typename S>
class Adam {
 public:
  Adam(const Params<S>& like, const Hyper& h)
      : m_(like.zeros_like()), v_(like.zeros_like()), lr_(h.learning_rate), b1_(h.beta1),
        b2_(h.beta2), eps_(h.epsilon) {}

  void step(Params<S>& p, const Params<S>& g) {
    ++t_;
    const S c1 = static_cast<S>(1.0 / (1.0 - std::pow(b1_, static_cast<double>(t_))));
    const S c2 = static_cast<S>(1.0 / (1.0 - std::pow(b2_, static_cast<double>(t_))));
    const S b1 = static_cast<S>(b1_), b2 = static_cast<S>(b2_);
    const S lr = static_cast<S>(lr_), eps = static_cast<S>(eps_);
    auto pt = p.tensors();
    auto gt = g.tensors();
    auto mt = m_.tensors();
    auto vt = v_.tensors();
    for (std::size_t k = 0; k < pt.size(); ++k) {
      auto m = mt[k].value->array();
      auto v = vt[k].value->array();
      const auto grad = gt[k].value->array();
      m = b1 * m + (S(1) - b1) * grad;
      v = b2 * v + (S(1) - b2) * grad.square();
      pt[k].value->array() -= lr * (m * c1) / ((v * c2).sqrt() + eps);
    }
  }

  long steps() const { return t_; }

 private:
  Params<S> m_, v_;
  double lr_, b1_, b2_, eps_;
  long t_ = 0;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;  // mean over the epoch's mini-batches, weighted by size
  double dev_subject_accuracy = 0;
  double dev_object_label_accuracy = 0;
  double dev_score = 0;
};

struct TrainResult {
  Model model;
  std::vector<EpochRecord> history;
  int best_epoch = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Dev score is subject accuracy plus three-way object accuracy (only the
// trained head counts in single-task modes). With an empty dev set every
// epoch runs and the last parameters are kept. Throws NumericError when the
// loss stops being finite.
TrainResult train(const std::vector<PredictionInstance>& train_set,
                  const std::vector<PredictionInstance>& dev_set, const Hyper& hyper,
                  const EpochCallback& on_epoch = {});

double dev_score(const Counts& c, Mode mode);

// Mean loss of `params` over a whole encoded set.
double dataset_loss(const Params<float>& params, const EncodedSet& data, Mode mode);

}  // namespace typology::net
