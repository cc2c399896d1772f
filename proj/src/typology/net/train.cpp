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


#include "typology/net/train.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "typology/error.hpp"
#include "typology/reorder.hpp"

namespace typology::net {

void Hyper::validate() const {
  if (!(learning_rate > 0)) throw InvalidArgument("learning rate must be positive");
  if (!(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1))
    throw InvalidArgument("Adam betas must be in [0, 1)");
  if (!(epsilon > 0)) throw InvalidArgument("Adam epsilon must be positive");
  if (batch_size < 1) throw InvalidArgument("batch size must be >= 1");
  if (max_epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (patience < 1) throw InvalidArgument("patience must be >= 1");
  if (word_min_count < 1) throw InvalidArgument("word min count must be >= 1");
  shape.validate();
}

double dev_score(const Counts& c, Mode mode) {
  double s = 0;
  if (mode != Mode::Object) s += c.subject_accuracy();
  if (mode != Mode::Subject) s += c.object_label_accuracy();
  return s;
}

double dataset_loss(const Params<float>& params, const EncodedSet& data, Mode mode) {
  Workspace<float> ws;
  std::vector<int> batch;
  double total = 0;
  for (std::size_t begin = 0; begin < data.items.size(); begin += 256) {
    const std::size_t end = std::min(data.items.size(), begin + 256);
    batch.resize(end - begin);
    std::iota(batch.begin(), batch.end(), static_cast<int>(begin));
    total += static_cast<double>(forward(params, data, batch, mode, ws)) *
             static_cast<double>(batch.size());
  }
  return data.items.empty() ? 0.0 : total / static_cast<double>(data.items.size());
}

TrainResult train(const std::vector<PredictionInstance>& train_set,
                  const std::vector<PredictionInstance>& dev_set, const Hyper& hyper,
                  const EpochCallback& on_epoch) {
  hyper.validate();
  if (train_set.empty()) throw EmptyInputError("empty training set");

  TrainResult result;
  Model& model = result.model;
  model.shape = hyper.shape;
  model.mode = hyper.mode;
  model.vocab = Vocab::build(train_set, hyper.word_min_count);
  const EncodedSet train_data = encode(model.vocab, train_set);
  const EncodedSet dev_data = encode(model.vocab, dev_set);

  Params<float> params = init_params<float>(hyper.shape, model.vocab.word_rows(),
                                            model.vocab.ngram_rows(), splitmix64(hyper.seed));
  Params<float> grad = params.zeros_like();
  Adam<float> adam(params, hyper);
  Workspace<float> ws;

  std::mt19937_64 shuffle_rng(splitmix64(hyper.seed ^ 0x5eedULL));
  std::vector<int> order(train_data.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> batch;

  double best = -1;
  int since_best = 0;
  Params<float> best_params = params;
  for (int epoch = 1; epoch <= hyper.max_epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[shuffle_rng() % (i + 1)]);
    double loss_sum = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), begin + static_cast<std::size_t>(hyper.batch_size));
      batch.assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                   order.begin() + static_cast<std::ptrdiff_t>(end));
      grad.set_zero();
      const float loss = forward(params, train_data, batch, hyper.mode, ws);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "loss became " << loss << " at epoch " << epoch << ", batch starting at "
            << begin << " (seed " << hyper.seed << ", lr " << hyper.learning_rate << ")";
        throw NumericError(msg.str());
      }
      backward(params, train_data, hyper.mode, ws, grad);
      adam.step(params, grad);
      loss_sum += static_cast<double>(loss) * static_cast<double>(batch.size());
    }
    if (!params.all_finite())
      throw NumericError("parameters became non-finite at epoch " + std::to_string(epoch));

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(order.size());
    if (!dev_data.items.empty()) {
      const std::vector<Prediction> preds = predict(params, dev_data);
      Counts c;
      for (std::size_t i = 0; i < dev_set.size(); ++i) c.add(dev_set[i].subject, dev_set[i].object, preds[i]);
      rec.dev_subject_accuracy = c.subject_accuracy();
      rec.dev_object_label_accuracy = c.object_label_accuracy();
      rec.dev_score = dev_score(c, hyper.mode);
    }
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (dev_data.items.empty()) {
      result.best_epoch = epoch;
      continue;
    }
    if (rec.dev_score > best) {
      best = rec.dev_score;
      best_params = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= hyper.patience) {
      break;
    }
  }
  model.params = dev_data.items.empty() ? std::move(params) : std::move(best_params);
  return result;
}

}  // namespace typology::net
