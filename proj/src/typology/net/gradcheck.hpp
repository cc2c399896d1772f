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

// Finite-difference check of the hand-written backward pass.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "typology/net/model.hpp"

namespace typology::net {

struct GradCheckOptions {
  double step = 1e-5;
  int samples_per_tensor = 4;
  std::uint64_t seed = 0;
  Mode mode = Mode::Joint;
  BackwardFault fault;
};

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst_tensor;
  int coordinates = 0;
};

// |a - n| / max(|a| + |n|, 1e-6)
double relative_error(double analytic, double numeric);

Params<double> compute_gradient(const Params<double>& params, const EncodedSet& data,
                                const std::vector<int>& batch, Mode mode,
                                const BackwardFault& fault = {});

// Central differences on a random sample of coordinates from every tensor.
// Embedding samples are drawn from the columns the instance actually reads.
GradCheckResult grad_check(const Params<double>& params, const EncodedSet& data, int item,
                           const GradCheckOptions& options = {});

}  // namespace typology::net
