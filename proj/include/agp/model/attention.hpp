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

#include <optional>
#include <span>

#include "agp/autodiff/tape.hpp"

namespace agp::model {

using ad::Tensor;
using ad::Var;

/// Additive value placed on masked compatibilities before the softmax.
inline constexpr double kMaskedLogit = -1e9;

/// Query/key/value projections of one attention head.
struct HeadProjections {
  Var wq;  ///< d_in_q x d_k
  Var wk;  ///< d_in_kv x d_k
  Var wv;  ///< d_in_kv x d_v
};

struct AttentionOutput {
  Var output;   ///< L_q x d_v
  Var weights;  ///< L_q x L_k, rows sum to one
};

/// Sinusoidal position table: PE[p, 2i] = sin(p / 10000^{2i/d}),
/// PE[p, 2i+1] = cos(p / 10000^{2i/d}).
Tensor positional_encoding(std::size_t length, std::size_t width);

/// L x L additive mask: 0 where key j <= query i, kMaskedLogit otherwise.
Tensor causal_mask(std::size_t length);

/// Scaled dot-product attention of one head. Compatibilities are divided by
/// the square root of the projected key width; `mask` is added before the
/// softmax and must be L_q x L_k.
AttentionOutput attention(Var queries_src, Var keys_src, const HeadProjections& head,
                          std::optional<Var> mask = std::nullopt);

/// Heads run independently; their outputs are concatenated and projected by
/// `w_out` ((n_heads * d_v) x d_h).
Var multi_head_attention(Var queries_src, Var keys_src, std::span<const HeadProjections> heads, Var w_out,
                         std::optional<Var> mask = std::nullopt);

}  // namespace agp::model
