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

#include <cstdint>

#include "agp/model/config.hpp"
#include "agp/params.hpp"

namespace agp::model {

/// Per-step Gaussian outputs of the plain-network contrast model.
struct GaussianHead {
  Var mean;     ///< L x 1
  Var log_var;  ///< L x 1
};

/// Weights of the two linear heads (F -> 1 each), prefixed "baseline.".
ParamSet init_baseline_head(const ModelConfig& cfg, std::uint64_t seed);

GaussianHead baseline_gaussian_head_forward(Var features, const BoundParams& p);

/// sum_i 0.5 * (log 2 pi + log_var_i + (y_i - mean_i)^2 / exp(log_var_i)).
Var gaussian_nll(const GaussianHead& head, Var targets);

}  // namespace agp::model
