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

#include "agp/train/adam.hpp"

#include <cmath>

#include "agp/errors.hpp"

namespace agp::train {
namespace {

void check_match(const ParamSet& params, const ParamSet& grads) {
  if (params.size() != grads.size()) throw ShapeError("optimizer: parameter and gradient sets differ in size");
  for (const auto& [name, p] : params) {
    if (!grads.contains(name)) throw ShapeError("optimizer: no gradient for '" + name + "'");
    if (grads.at(name).shape() != p.shape()) {
      throw ShapeError("optimizer: gradient of '" + name + "' has shape " + ad::shape_string(grads.at(name).shape()) +
                       ", parameter has " + ad::shape_string(p.shape()));
    }
  }
}

}  // namespace

void adam_step(ParamSet& params, const ParamSet& grads, AdamState& state, double lr, const AdamOptions& opts) {
  check_match(params, grads);
  if (state.t == 0 && state.m.empty()) {
    state.m = params.zeros_like();
    state.v = params.zeros_like();
  }
  check_match(params, state.m);
  ++state.t;
  const double c1 = 1.0 - std::pow(opts.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(opts.beta2, static_cast<double>(state.t));
  for (auto& [name, p] : params) {
    auto pd = p.data();
    auto g = grads.at(name).data();
    auto m = state.m.at(name).data();
    auto v = state.v.at(name).data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
      m[i] = opts.beta1 * m[i] + (1.0 - opts.beta1) * g[i];
      v[i] = opts.beta2 * v[i] + (1.0 - opts.beta2) * g[i] * g[i];
      const double mhat = m[i] / c1;
      const double vhat = v[i] / c2;
      pd[i] -= lr * mhat / (std::sqrt(vhat) + opts.eps);
    }
  }
}

void sgd_step(ParamSet& params, const ParamSet& grads, double lr) {
  check_match(params, grads);
  for (auto& [name, p] : params) {
    auto pd = p.data();
    auto g = grads.at(name).data();
    for (std::size_t i = 0; i < pd.size(); ++i) pd[i] -= lr * g[i];
  }
}

}  // namespace agp::train
