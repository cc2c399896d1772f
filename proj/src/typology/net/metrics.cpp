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


#include "typology/net/metrics.hpp"

#include <algorithm>

#include "json.hpp"
#include "typology/error.hpp"

namespace typology::net {
namespace {

using nlohmann::json;

const char* kSubjectNames[] = {"sg", "pl"};
const char* kObjectNames[] = {"sg", "pl", "none"};

double ratio(long a, long b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

json counts_json(const Counts& c) {
  return {{"instances", c.instances},
          {"subject_accuracy", c.subject_accuracy()},
          {"object_recall", c.object_recall()},
          {"object_accuracy", c.object_accuracy()},
          {"object_label_accuracy", c.object_label_accuracy()},
          {"transitive", c.transitive},
          {"subject_correct", c.subject_correct},
          {"object_recalled", c.object_recalled},
          {"object_correct", c.object_correct},
          {"object_label_correct", c.object_label_correct}};
}

}  // namespace

std::vector<Prediction> predict(const Params<float>& params, const EncodedSet& data,
                                int batch_size) {
  std::vector<Prediction> out(data.items.size());
  Workspace<float> ws;
  std::vector<int> batch;
  for (std::size_t begin = 0; begin < data.items.size(); begin += batch_size) {
    const std::size_t end = std::min(data.items.size(), begin + static_cast<std::size_t>(batch_size));
    batch.clear();
    for (std::size_t i = begin; i < end; ++i) batch.push_back(static_cast<int>(i));
    forward(params, data, batch, Mode::Joint, ws);
    for (std::size_t k = 0; k < batch.size(); ++k) {
      Prediction& p = out[begin + k];
      const auto col = static_cast<Eigen::Index>(k);
      for (int c = 0; c < 2; ++c) p.subject_probs[c] = ws.subj.probs(c, col);
      for (int c = 0; c < 3; ++c) p.object_probs[c] = ws.obj.probs(c, col);
      p.subject = static_cast<int>(std::max_element(p.subject_probs.begin(), p.subject_probs.end()) -
                                   p.subject_probs.begin());
      p.object = static_cast<int>(std::max_element(p.object_probs.begin(), p.object_probs.end()) -
                                  p.object_probs.begin());
    }
  }
  return out;
}

std::vector<Prediction> predict(const Model& model, const std::vector<PredictionInstance>& instances) {
  return predict(model.params, encode(model.vocab, instances));
}

void Counts::add(Plurality gold_subject, Plurality gold_object, const Prediction& p) {
  const int s = subject_label(gold_subject);
  const int o = object_label(gold_object);
  ++instances;
  subject_correct += p.subject == s;
  object_label_correct += p.object == o;
  if (o != 2) {
    ++transitive;
    if (p.object != 2) {
      ++object_recalled;
      object_correct += p.object == o;
    }
  }
}

Counts& Counts::operator+=(const Counts& o) {
  instances += o.instances;
  subject_correct += o.subject_correct;
  transitive += o.transitive;
  object_recalled += o.object_recalled;
  object_correct += o.object_correct;
  object_label_correct += o.object_label_correct;
  return *this;
}

double Counts::subject_accuracy() const { return ratio(subject_correct, instances); }
double Counts::object_recall() const { return ratio(object_recalled, transitive); }
double Counts::object_accuracy() const { return ratio(object_correct, object_recalled); }
double Counts::object_label_accuracy() const { return ratio(object_label_correct, instances); }

Metrics compute_metrics(const std::vector<PredictionInstance>& instances,
                        const std::vector<Prediction>& predictions) {
  if (instances.size() != predictions.size())
    throw InvalidArgument("instance and prediction counts differ");
  Metrics m;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const PredictionInstance& inst = instances[i];
    const Prediction& p = predictions[i];
    m.overall.add(inst.subject, inst.object, p);
    auto flag = [&](const std::string& name, bool on) {
      m.by_attractor[on ? name : "no_" + name].add(inst.subject, inst.object, p);
    };
    flag("subject_attractor", inst.meta.subject_attractor);
    flag("object_attractor", inst.meta.object_attractor);
    flag("non_object_attractor", inst.meta.non_object_attractor);
    const std::string cat =
        inst.meta.test_category ? std::string(to_string(*inst.meta.test_category)) : "none";
    m.by_test_category[cat].add(inst.subject, inst.object, p);
  }
  return m;
}

Metrics evaluate(const Model& model, const std::vector<PredictionInstance>& instances) {
  if (instances.empty()) throw EmptyInputError("no instances to evaluate");
  return compute_metrics(instances, predict(model, instances));
}

std::string counts_to_json(const Counts& c) { return counts_json(c).dump(); }

std::string metrics_to_json(const Metrics& m) {
  json j = counts_json(m.overall);
  json by_attr = json::object();
  for (const auto& [k, c] : m.by_attractor) by_attr[k] = counts_json(c);
  json by_cat = json::object();
  for (const auto& [k, c] : m.by_test_category) by_cat[k] = counts_json(c);
  j["by_attractor"] = std::move(by_attr);
  j["by_test_category"] = std::move(by_cat);
  return j.dump(2);
}

std::string predictions_to_jsonl(const std::vector<PredictionInstance>& instances,
                                 const std::vector<Prediction>& predictions) {
  if (instances.size() != predictions.size())
    throw InvalidArgument("instance and prediction counts differ");
  std::string out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const PredictionInstance& inst = instances[i];
    const Prediction& p = predictions[i];
    json j = {{"sent_id", inst.meta.sent_id},
              {"target_index", inst.target_index},
              {"subject_pred", kSubjectNames[p.subject]},
              {"object_pred", kObjectNames[p.object]},
              {"probabilities",
               {{"subject", {{"sg", p.subject_probs[0]}, {"pl", p.subject_probs[1]}}},
                {"object",
                 {{"sg", p.object_probs[0]}, {"pl", p.object_probs[1]}, {"none", p.object_probs[2]}}}}},
              {"gold", {{"subject", to_string(inst.subject)}, {"object", to_string(inst.object)}}},
              {"subject_attractor", inst.meta.subject_attractor},
              {"object_attractor", inst.meta.object_attractor},
              {"non_object_attractor", inst.meta.non_object_attractor}};
    if (inst.meta.test_category) j["test_category"] = to_string(*inst.meta.test_category);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace typology::net
