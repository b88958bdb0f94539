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
#include <vector>

#include "agp/autodiff/linalg.hpp"
#include "agp/gp/kernel.hpp"

namespace agp::gp {

/// Largest feature width accepted by the interpolation path.
inline constexpr std::size_t kMaxKissDim = 4;

/// Regular inducing grid: the Cartesian product of one evenly spaced axis
/// per feature dimension.
struct InducingGrid {
  std::vector<std::vector<double>> axes;
  Tensor points;  ///< u x F, last dimension varying fastest

  /// floor(u^(1/F)) (at least 2) points per axis spanning the bounding box of
  /// `features` widened by `margin` of its extent on each side. Throws
  /// ConfigError when F exceeds kMaxKissDim or u < 2.
  static InducingGrid build(const Tensor& features, std::size_t u, double margin = 0.05);

  std::size_t size() const { return points.rows(); }
  std::size_t dim() const { return axes.size(); }
  /// Dense K_UU at the given hyperparameters.
  Tensor kuu(const GPHyperparams& theta) const;
};

/// Compressed-row interpolation weights S (N x u).
struct InterpolationMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  /// Coordinates that fell outside the grid and were clamped to its boundary.
  std::size_t clamped = 0;

  Tensor dense() const;
  /// S v for v with `cols` entries.
  std::vector<double> apply(std::span<const double> v) const;
  /// S^T v for v with `rows` entries.
  std::vector<double> apply_transpose(std::span<const double> v) const;
};

/// Multilinear interpolation weights over the 2^F corners of each point's
/// enclosing cell. Rows are convex and sum to one.
InterpolationMatrix kiss_weights(const Tensor& features, const InducingGrid& grid);

/// (S K_UU S^T + noise I) v without materializing the N x N matrix.
Tensor kiss_matvec(const InterpolationMatrix& s, const Tensor& kuu, double noise, const Tensor& v);

struct CgOptions {
  double rel_tol = 1e-10;
  std::size_t max_iter = 0;  ///< 0 selects max(2N, 1000)
};

/// Differentiable dense interpolation matrix; the gradient with respect to
/// the features follows the multilinear weights (zero along clamped axes).
Var interp_matrix(Var features, const InducingGrid& grid, std::size_t* clamped = nullptr);

/// 0.5 y^T (S K S^T + noise I)^{-1} y, solved by conjugate gradients on the
/// sparse structure of S. Throws ConditioningError (with the residual norm)
/// on non-convergence.
Var kiss_quad_form(Var s, Var kuu, Var noise, Var targets, const CgOptions& cg = {});

struct KissStats {
  std::size_t clamped = 0;
};

/// Negative log marginal likelihood with K approximated by S K_UU S^T. The
/// data-fit term uses the CG solve; the log-determinant is taken from a
/// Cholesky factor of the materialized N x N approximation.
Var kiss_nll(Var features, Var targets, const HyperVars& theta, const InducingGrid& grid, const CgOptions& cg = {},
             KissStats* stats = nullptr);

}  // namespace agp::gp
