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

namespace agp::ad {

// Binary elementwise ops accept either equal shapes or a 1 x n row vector
// as the second operand, broadcast over the rows of an m x n first operand.
// That is the only broadcast pattern supported anywhere in the library.

Var matmul(Var a, Var b);
Var transpose(Var a);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
Var add_scalar(Var a, double offset);
Var relu(Var a);
Var exp(Var a);
/// Throws DomainError on non-positive entries.
Var log(Var a);
/// Row-wise softmax with max subtraction.
Var softmax_rows(Var a);
/// Sum of all entries, as a 1 x 1 tensor.
Var sum(Var a);
/// Pairwise squared Euclidean distances between rows: out(i, j) = |a_i - b_j|^2.
Var sq_dist(Var a, Var b);

Var concat_rows(std::span<const Var> parts);
Var concat_cols(std::span<const Var> parts);
/// Rows [begin, end).
Var slice_rows(Var a, std::size_t begin, std::size_t end);
/// Columns [begin, end).
Var slice_cols(Var a, std::size_t begin, std::size_t end);

enum class Elementwise { kAdd, kSub, kMul, kScale, kRelu, kExp, kLog };

/// Dispatcher over the elementwise family. `b` is required for binary kinds;
/// `factor` is used by kScale only.
Var elementwise(Var a, std::optional<Var> b, Elementwise kind, double factor = 1.0);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }

}  // namespace agp::ad
