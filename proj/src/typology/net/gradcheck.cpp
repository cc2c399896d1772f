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


#include "typology/net/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <set>

namespace typology::net {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(std::abs(analytic) + std::abs(numeric), 1e-6);
}

Params<double> compute_gradient(const Params<double>& params, const EncodedSet& data,
                                const std::vector<int>& batch, Mode mode,
                                const BackwardFault& fault) {
  Workspace<double> ws;
  forward(params, data, batch, mode, ws);
  Params<double> grad = params.zeros_like();
  backward(params, data, mode, ws, grad, fault);
  return grad;
}

GradCheckResult grad_check(const Params<double>& params, const EncodedSet& data, int item,
                           const GradCheckOptions& options) {
  const std::vector<int> batch{item};
  const Params<double> grad = compute_gradient(params, data, batch, options.mode, options.fault);
  Params<double> probe = params;
  Workspace<double> ws;
  std::mt19937_64 rng(options.seed);

  std::set<int> word_cols, ngram_cols;
  const EncodedInstance& e = data.items.at(item);
  for (const auto* seq : {&e.left, &e.right})
    for (int t : *seq) {
      word_cols.insert(data.types.word[t]);
      for (int ng : data.types.ngrams[t]) ngram_cols.insert(ng);
    }
  const std::vector<int> words(word_cols.begin(), word_cols.end());
  const std::vector<int> ngrams(ngram_cols.begin(), ngram_cols.end());

  GradCheckResult result;
  auto probe_tensors = probe.tensors();
  auto grad_tensors = grad.tensors();
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    Mat<double>& m = *probe_tensors[k].value;
    const std::string name = probe_tensors[k].name;
    const std::vector<int>* cols = nullptr;
    if (name == "word_emb") cols = &words;
    if (name == "ngram_emb") cols = &ngrams;
    if (m.size() == 0 || (cols && cols->empty())) continue;
    for (int s = 0; s < options.samples_per_tensor; ++s) {
      const Eigen::Index i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(m.rows()));
      const Eigen::Index j =
          cols ? (*cols)[rng() % cols->size()]
               : static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(m.cols()));
      const double saved = m(i, j);
      m(i, j) = saved + options.step;
      const double up = forward(probe, data, batch, options.mode, ws);
      m(i, j) = saved - options.step;
      const double down = forward(probe, data, batch, options.mode, ws);
      m(i, j) = saved;
      const double numeric = (up - down) / (2 * options.step);
      const double err = relative_error((*grad_tensors[k].value)(i, j), numeric);
      ++result.coordinates;
      if (err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_tensor = name;
      }
    }
  }
  return result;
}

}  // namespace typology::net
