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

#include "agp/params.hpp"

namespace agp::train {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// First and second moment estimates plus the step counter.
struct AdamState {
  ParamSet m;
  ParamSet v;
  std::size_t t = 0;
};

/// One bias-corrected Adam update in place. `grads` must hold the same names
/// and shapes as `params`; the state is lazily initialized on first use.
void adam_step(ParamSet& params, const ParamSet& grads, AdamState& state, double lr, const AdamOptions& opts = {});

/// params -= lr * grads.
void sgd_step(ParamSet& params, const ParamSet& grads, double lr);

}  // namespace agp::train
