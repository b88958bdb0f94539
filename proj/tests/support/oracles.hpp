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

// Independent reference implementations used by the tests. Everything here
// is written with plain loops or dense Eigen algebra and shares no code with
// the tape-based library paths it checks.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "agp/autodiff/tensor.hpp"
#include "agp/gp/kernel.hpp"

namespace oracle {

using agp::ad::Tensor;

Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// Triple-loop matrix product.
Tensor naive_matmul(const Tensor& a, const Tensor& b);

struct LoopAttention {
  Tensor output;   ///< L_q x d_v
  Tensor weights;  ///< L_q x L_k
};

/// Scaled dot-product attention written as explicit sums: compatibility
/// (q_i Wq)(k_j Wk)^T / sqrt(width of Wq), softmax over j (masked j > i
/// excluded entirely), and h_i = sum_j alpha_ij (k_j Wv).
LoopAttention loop_attention(const Tensor& q_src, const Tensor& k_src, const Tensor& wq, const Tensor& wk,
                             const Tensor& wv, bool causal);

/// Dense reference for the GP objective and its gradients: explicit inverse
/// of K + s2 I and log-determinant from eigenvalues.
struct DenseGp {
  double nll = 0.0;
  std::vector<double> grad_log_lengthscales;
  double grad_log_noise = 0.0;
  Tensor grad_features;  ///< N x F
  Tensor grad_targets;   ///< N x 1
};

DenseGp dense_gp(const Tensor& x, const Tensor& y, const agp::gp::GPHyperparams& theta);

struct DensePrediction {
  std::vector<double> mean;
  std::vector<double> latent_variance;
};

DensePrediction dense_predict(const Tensor& x, const Tensor& y, const Tensor& query,
                              const agp::gp::GPHyperparams& theta);

double rel_err(double a, double b);

}  // namespace oracle
