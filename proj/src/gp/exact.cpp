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

#include "agp/gp/exact.hpp"

#include <cmath>
#include <numbers>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"

namespace agp::gp {

Var gp_nll(Var features, Var targets, const HyperVars& theta, const ad::JitterPolicy& jitter) {
  const std::size_t n = features.rows();
  if (n == 0) throw ContractError("gp_nll: no training points");
  if (targets.rows() != n || targets.cols() != 1) {
    throw ShapeError("gp_nll: targets " + ad::shape_string(targets.value().shape()) + " do not match " +
                     std::to_string(n) + " feature rows");
  }
  Var k = kernel_matrix(features, features, theta.log_lengthscales);
  Var noisy = ad::add_scaled_identity(k, ad::exp(theta.log_noise));
  Var chol = ad::cholesky(noisy, jitter).factor;
  Var white = ad::tri_solve_lower(chol, targets);
  Var fit = ad::scale(ad::sum(ad::mul(white, white)), 0.5);
  Var complexity = ad::sum_log_diag(chol);
  const double constant = 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return ad::add_scalar(ad::add(fit, complexity), constant);
}

double gp_nll_value(const Tensor& features, const Tensor& targets, const GPHyperparams& theta) {
  ad::Tape tape;
  HyperVars hv{tape.constant(Tensor::row(theta.log_lengthscales)), tape.constant(Tensor::scalar(theta.log_noise))};
  return gp_nll(tape.constant(features), tape.constant(targets), hv).value().item();
}

GpPosterior::GpPosterior(Tensor train_features, Tensor train_targets, GPHyperparams theta,
                         const ad::JitterPolicy& jitter)
    : features_(std::move(train_features)), targets_(std::move(train_targets)), theta_(std::move(theta)) {
  const std::size_t n = features_.rows();
  if (n == 0) throw ContractError("GpPosterior: no training points");
  if (targets_.rows() != n || targets_.cols() != 1) throw ShapeError("GpPosterior: targets must be N x 1");
  ad::RowMatrix k = kernel_matrix(features_, features_, theta_).mat();
  k.diagonal().array() += theta_.noise();
  jitter_ = ad::cholesky_factor(k, chol_, jitter);
  const Eigen::VectorXd y = targets_.mat().col(0);
  const Eigen::VectorXd w = chol_.triangularView<Eigen::Lower>().solve(y);
  alpha_ = chol_.transpose().triangularView<Eigen::Upper>().solve(w);
}

PredictiveDistribution GpPosterior::predict(const Tensor& query, bool observation_noise) const {
  const Tensor kq = kernel_matrix(query, features_, theta_);  // M x N
  const std::size_t m = query.rows();
  PredictiveDistribution out;
  out.mean.resize(m);
  out.variance.resize(m);
  const double noise = observation_noise ? theta_.noise() : 0.0;
  // Rows are handled one at a time so a query's result does not depend on
  // which other rows were queried with it.
  for (std::size_t j = 0; j < m; ++j) {
    const Eigen::VectorXd k = kq.mat().row(static_cast<Eigen::Index>(j)).transpose();
    out.mean[j] = k.dot(alpha_);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    out.variance[j] = std::max(1.0 - v.squaredNorm(), 0.0) + noise;
  }
  return out;
}

PredictiveDistribution gp_predict(const Tensor& train_features, const Tensor& train_targets, const Tensor& query,
                                  const GPHyperparams& theta, bool observation_noise) {
  return GpPosterior(train_features, train_targets, theta).predict(query, observation_noise);
}

}  // namespace agp::gp
