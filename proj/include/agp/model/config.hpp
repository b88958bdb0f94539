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

#pragma once

#include <cstddef>

namespace agp::model {

/// Architecture of the encoder-decoder feature extractor.
struct ModelConfig {
  std::size_t input_dim = 1;  ///< raw input channels per time step
  std::size_t d_x = 16;       ///< embedding width
  std::size_t d_h = 16;       ///< attention output width
  std::size_t n_layers = 1;   ///< attention layers per stack
  std::size_t n_heads = 2;
  std::size_t d_k = 8;        ///< per-head key/query/value width
  std::size_t d_c = 16;       ///< encoder output width
  std::size_t F = 2;          ///< feature width handed to the GP layer
  std::size_t L = 8;          ///< sequence length

  /// Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace agp::model
