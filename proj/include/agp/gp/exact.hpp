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

#include <vector>

#include "agp/autodiff/linalg.hpp"
#include "agp/gp/kernel.hpp"

namespace agp::gp {

/// Negative log marginal likelihood with zero prior mean,
///   0.5 y^T (K + s2 I)^{-1} y + 0.5 log|K + s2 I| + (N/2) log 2 pi,
/// evaluated through a Cholesky factor on the tape. Differentiable with
/// respect to the features, the targets and both hyperparameters.
Var gp_nll(Var features, Var targets, const HyperVars& theta, const ad::JitterPolicy& jitter = {});

/// Scalar convenience wrapper.
double gp_nll_value(const Tensor& features, const Tensor& targets, const GPHyperparams& theta);

/// Mean and diagonal variance at query points.
struct PredictiveDistribution {
  std::vector<double> mean;
  std::vector<double> variance;
};

/// Cached training-side quantities: features, targets, Cholesky factor of
/// K + s2 I and alpha = (K + s2 I)^{-1} y. Built once and reused for every
/// query.
class GpPosterior {
 public:
  GpPosterior(Tensor train_features, Tensor train_targets, GPHyperparams theta, const ad::JitterPolicy& jitter = {});

  /// Latent predictive distribution of f at the query rows; with
  /// `observation_noise` the noise variance is added to every variance.
  PredictiveDistribution predict(const Tensor& query, bool observation_noise = false) const;

  const GPHyperparams& hyperparams() const { return theta_; }
  const Tensor& features() const { return features_; }
  double jitter() const { return jitter_; }

 private:
  Tensor features_;
  Tensor targets_;
  GPHyperparams theta_;
  ad::RowMatrix chol_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
};

PredictiveDistribution gp_predict(const Tensor& train_features, const Tensor& train_targets, const Tensor& query,
                                  const GPHyperparams& theta, bool observation_noise = false);

}  // namespace agp::gp
