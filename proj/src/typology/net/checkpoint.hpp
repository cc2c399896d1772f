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

// Plain-text model checkpoints.
//
//   typology-model 1
//   shape <embedding_dim> <hidden> <mlp1> <mlp2>
//   mode <joint|subject|object>
//   words <n>            followed by n JSON-quoted strings, one per line
//   ngrams <m>           likewise
//   tensor <name> <rows> <cols>   followed by one line per column
//   end

#pragma once

#include <iosfwd>
#include <string>

#include "typology/net/model.hpp"

namespace typology::net {

inline constexpr int kCheckpointVersion = 1;

void write_model(std::ostream& out, const Model& model);
Model read_model(std::istream& in, const std::string& name = "<checkpoint>");
void save_model(const std::string& path, const Model& model);
Model load_model(const std::string& path);

}  // namespace typology::net
