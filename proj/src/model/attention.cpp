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

#include "agp/model/attention.hpp"

#include <cmath>
#include <vector>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"

namespace agp::model {

Tensor positional_encoding(std::size_t length, std::size_t width) {
  Tensor pe({length, width});
  for (std::size_t pos = 0; pos < length; ++pos) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t pair = c / 2;
      const double rate = std::pow(10000.0, 2.0 * static_cast<double>(pair) / static_cast<double>(width));
      const double angle = static_cast<double>(pos) / rate;
      pe(pos, c) = (c % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
  return pe;
}

Tensor causal_mask(std::size_t length) {
  Tensor m({length, length});
  for (std::size_t i = 0; i < length; ++i)
    for (std::size_t j = i + 1; j < length; ++j) m(i, j) = kMaskedLogit;
  return m;
}

AttentionOutput attention(Var queries_src, Var keys_src, const HeadProjections& head, std::optional<Var> mask) {
  Var q = ad::matmul(queries_src, head.wq);
  Var k = ad::matmul(keys_src, head.wk);
  Var v = ad::matmul(keys_src, head.wv);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head.wq.cols()));
  Var scores = ad::scale(ad::matmul(q, ad::transpose(k)), inv_sqrt);
  if (mask) {
    if (mask->value().shape() != scores.value().shape()) {
      throw ShapeError("attention: mask shape " + ad::shape_string(mask->value().shape()) +
                       " does not match compatibilities " + ad::shape_string(scores.value().shape()));
    }
    scores = ad::add(scores, *mask);
  }
  Var weights = ad::softmax_rows(scores);
  return {ad::matmul(weights, v), weights};
}

Var multi_head_attention(Var queries_src, Var keys_src, std::span<const HeadProjections> heads, Var w_out,
                         std::optional<Var> mask) {
  if (heads.empty()) throw ContractError("multi_head_attention: n_heads must be at least 1");
  std::vector<Var> outs;
  outs.reserve(heads.size());
  for (const auto& h : heads) outs.push_back(attention(queries_src, keys_src, h, mask).output);
  Var joined = outs.size() == 1 ? outs[0] : ad::concat_cols(outs);
  return ad::matmul(joined, w_out);
}

}  // namespace agp::model
