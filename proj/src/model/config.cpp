/*
 * Copyright 2026 The agp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "agp/model/config.hpp"

#include <string>

#include "agp/errors.hpp"

namespace agp::model {

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string("model.") + name + " must be positive");
  };
  positive(input_dim, "input_dim");
  positive(d_x, "d_x");
  positive(d_h, "d_h");
  positive(n_layers, "n_layers");
  positive(n_heads, "n_heads");
  positive(d_k, "d_k");
  positive(d_c, "d_c");
  positive(F, "F");
  positive(L, "L");
}

}  // namespace agp::model
