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

#include <span>
#include <vector>

#include "agp/params.hpp"

namespace agp::gp {

using ad::Tensor;
using ad::Var;

inline constexpr const char* kLogLengthscales = "gp.log_lengthscales";
inline constexpr const char* kLogNoise = "gp.log_noise";

/// Kernel lengthscales and noise variance, stored as logarithms so that any
/// real value maps to a valid (positive) hyperparameter.
struct GPHyperparams {
  std::vector<double> log_lengthscales;
  double log_noise = 0.0;

  /// Lengthscale 1 per dimension, noise variance 0.1.
  static GPHyperparams initial(std::size_t feature_dim, double lengthscale = 1.0, double noise = 0.1);
  static GPHyperparams from_params(const ParamSet& params);
  ParamSet to_params() const;

  std::size_t dim() const { return log_lengthscales.size(); }
  double noise() const;
  double lengthscale(std::size_t d) const;
};

/// Tape handles of the hyperparameters: log lengthscales as 1 x F, log noise as 1 x 1.
struct HyperVars {
  Var log_lengthscales;
  Var log_noise;

  static HyperVars from(const BoundParams& p) { return {p[kLogLengthscales], p[kLogNoise]}; }
};

/// exp(-0.5 * sum_d ((a_d - b_d) / l_d)^2); unit signal variance.
double se_kernel(std::span<const double> a, std::span<const double> b, const GPHyperparams& theta);

/// Pairwise kernel values between rows of X (N x F) and Z (M x F).
Tensor kernel_matrix(const Tensor& x, const Tensor& z, const GPHyperparams& theta);

/// Differentiable kernel matrix; gradients flow into X, Z and the log lengthscales.
Var kernel_matrix(Var x, Var z, Var log_lengthscales);

}  // namespace agp::gp
