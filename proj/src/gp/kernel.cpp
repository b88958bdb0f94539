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

#include "agp/gp/kernel.hpp"

#include <cmath>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"

namespace agp::gp {

GPHyperparams GPHyperparams::initial(std::size_t feature_dim, double lengthscale, double noise) {
  if (feature_dim == 0 || lengthscale <= 0.0 || noise <= 0.0) {
    throw ContractError("GPHyperparams::initial: dimension, lengthscale and noise must be positive");
  }
  return {std::vector<double>(feature_dim, std::log(lengthscale)), std::log(noise)};
}

GPHyperparams GPHyperparams::from_params(const ParamSet& params) {
  const Tensor& ls = params.at(kLogLengthscales);
  return {std::vector<double>(ls.data().begin(), ls.data().end()), params.at(kLogNoise).item()};
}

ParamSet GPHyperparams::to_params() const {
  ParamSet out;
  out.set(kLogLengthscales, Tensor::row(log_lengthscales));
  out.set(kLogNoise, Tensor::scalar(log_noise));
  return out;
}

double GPHyperparams::noise() const { return std::exp(log_noise); }

double GPHyperparams::lengthscale(std::size_t d) const { return std::exp(log_lengthscales.at(d)); }

double se_kernel(std::span<const double> a, std::span<const double> b, const GPHyperparams& theta) {
  if (a.size() != theta.dim() || b.size() != theta.dim()) {
    throw ShapeError("se_kernel: inputs must have " + std::to_string(theta.dim()) + " dimensions");
  }
  double q = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double r = (a[d] - b[d]) / theta.lengthscale(d);
    q += r * r;
  }
  return std::exp(-0.5 * q);
}

Tensor kernel_matrix(const Tensor& x, const Tensor& z, const GPHyperparams& theta) {
  ad::Tape tape;
  return kernel_matrix(tape.constant(x), tape.constant(z), tape.constant(Tensor::row(theta.log_lengthscales)))
      .value();
}

Var kernel_matrix(Var x, Var z, Var log_lengthscales) {
  if (x.cols() != z.cols() || log_lengthscales.value().size() != x.cols()) {
    throw ShapeError("kernel_matrix: feature widths disagree: " + ad::shape_string(x.value().shape()) + ", " +
                     ad::shape_string(z.value().shape()) + ", lengthscales " +
                     ad::shape_string(log_lengthscales.value().shape()));
  }
  Var inv_ls = ad::exp(ad::scale(log_lengthscales, -1.0));
  Var xs = ad::mul(x, inv_ls);
  Var zs = x.id == z.id ? xs : ad::mul(z, inv_ls);
  return ad::exp(ad::scale(ad::sq_dist(xs, zs), -0.5));
}

}  // namespace agp::gp
