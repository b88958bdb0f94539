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

#include "agp/autodiff/tape.hpp"

namespace agp::ad {

/// Diagonal jitter escalation for Cholesky: an unjittered attempt first, then
/// `initial`, `initial * factor`, ... up to and including `max`.
struct JitterPolicy {
  double initial = 1e-8;
  double max = 1e-4;
  double factor = 10.0;
};

struct CholeskyResult {
  Var factor;     ///< lower-triangular L with L L^T = sym(A) + jitter I
  double jitter;  ///< 0 when no jitter was needed
};

/// Differentiable Cholesky factorization of the symmetric part of `a`.
/// Throws ConditioningError (naming the last jitter tried) when every
/// attempt fails. The jitter is treated as a constant by the gradient.
CholeskyResult cholesky(Var a, const JitterPolicy& policy = {});

/// X = L^{-1} B for lower-triangular L (only the lower triangle is read).
Var tri_solve_lower(Var l, Var b);

/// sum_i log(L_ii); requires a positive diagonal.
Var sum_log_diag(Var l);

/// A + s I for square A and 1 x 1 s.
Var add_scaled_identity(Var a, Var s);

/// Plain (non-tape) factorization with the same jitter escalation.
/// Returns the jitter used.
double cholesky_factor(const RowMatrix& a, RowMatrix& l, const JitterPolicy& policy = {});

}  // namespace agp::ad
