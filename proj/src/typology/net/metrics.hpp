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

// Predictions, accuracy counts and their JSON forms.

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "typology/dataset.hpp"
#include "typology/net/model.hpp"

namespace typology::net {

struct Prediction {
  int subject = 0;  // 0 sg, 1 pl
  int object = 2;   // 0 sg, 1 pl, 2 none
  std::array<double, 2> subject_probs{};
  std::array<double, 3> object_probs{};
};

std::vector<Prediction> predict(const Params<float>& params, const EncodedSet& data,
                                int batch_size = 256);
std::vector<Prediction> predict(const Model& model, const std::vector<PredictionInstance>& instances);

struct Counts {
  long instances = 0;
  long subject_correct = 0;
  long transitive = 0;            // gold object is sg or pl
  long object_recalled = 0;       // ... and the prediction is not none
  long object_correct = 0;        // ... and the plurality matches
  long object_label_correct = 0;  // exact three-way match, all instances

  void add(Plurality gold_subject, Plurality gold_object, const Prediction& p);
  Counts& operator+=(const Counts& o);

  // Ratios are 0 when their denominator is empty.
  double subject_accuracy() const;
  double object_recall() const;
  double object_accuracy() const;
  double object_label_accuracy() const;
};

struct Metrics {
  Counts overall;
  // "subject_attractor" / "no_subject_attractor", likewise for
  // object_attractor and non_object_attractor.
  std::map<std::string, Counts> by_attractor;
  // Test category name, or "none" for instances without one.
  std::map<std::string, Counts> by_test_category;
};

Metrics compute_metrics(const std::vector<PredictionInstance>& instances,
                        const std::vector<Prediction>& predictions);
// Throws EmptyInputError on an empty list.
Metrics evaluate(const Model& model, const std::vector<PredictionInstance>& instances);

std::string counts_to_json(const Counts& c);
std::string metrics_to_json(const Metrics& m);
// One line per instance: sent_id, target_index, subject_pred, object_pred,
// probabilities, gold labels and the meta flags used for breakdowns.
std::string predictions_to_jsonl(const std::vector<PredictionInstance>& instances,
                                 const std::vector<Prediction>& predictions);

}  // namespace typology::net
