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

#include <cstdint>
#include <span>
#include <vector>

#include "agp/model/attention.hpp"
#include "agp/model/config.hpp"
#include "agp/params.hpp"

namespace agp::model {

/// Fresh network weights (the W block). Matrices are drawn from
/// U(-sqrt(1/fan_in), +sqrt(1/fan_in)).
ParamSet init_params(const ModelConfig& cfg, std::uint64_t seed);

/// seq * w + b + pe.
Var embed(Var seq, Var w, Var b, Var pe);

/// Encoder stack: per layer, self-attention then a ReLU feedforward, each
/// wrapped in a residual connection. Returns L x d_c.
Var encoder_forward(Var x_embedded, const BoundParams& p, const ModelConfig& cfg);

/// Decoder stack: per layer, causally masked self-attention, cross-attention
/// over the encoder output, and a feedforward sublayer, each with a residual
/// connection; then a linear projection to F. Returns L x F.
Var decoder_forward(Var y_embedded, Var enc_out, const BoundParams& p, const ModelConfig& cfg);

/// Decoder input for targets y (L x 1): row 0 is the learned start token,
/// row i > 0 embeds y_{i-1}; positional encoding added.
Var embed_outputs(Var y, const BoundParams& p, const ModelConfig& cfg);

/// Feature vectors for one sequence pair: x (L x input_dim), y (L x 1).
/// Row i depends on all of x and on y rows strictly before i.
Var features(Var x, Var y, const BoundParams& p, const ModelConfig& cfg);

/// Stacked features of the selected sequences, (|indices| * L) x F.
Var batch_features(ad::Tape& tape, const BoundParams& p, const ModelConfig& cfg, std::span<const Tensor> inputs,
                   std::span<const Tensor> targets, std::span<const std::size_t> indices);

/// Plain forward pass (no gradients) for the given sequences.
Tensor compute_features(const ParamSet& weights, const ModelConfig& cfg, std::span<const Tensor> inputs,
                        std::span<const Tensor> targets);

}  // namespace agp::model
