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

#include "agp/train/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "agp/errors.hpp"

namespace agp::train {

double estimate_lipschitz(const TrainTrace& trace) {
  double l = 0.0;
  for (const auto& r : trace.rounds) l = std::max(l, r.lipschitz_ratio);
  return l;
}

double estimate_variance_bound(const TrainTrace& trace) {
  double m = 0.0;
  for (const auto& r : trace.rounds) m = std::max(m, r.max_stoch_grad_sq);
  return m;
}

DescentReport descent_monitor(const TrainTrace& trace, double lipschitz, double variance, std::size_t window) {
  if (trace.rounds.size() < 2) throw ContractError("descent_monitor needs at least 2 recorded rounds");
  if (window == 0) throw ContractError("descent_monitor window must be positive");
  DescentReport rep;
  rep.lipschitz = lipschitz;
  rep.variance = variance;
  double prev = trace.initial_loss;
  for (const auto& r : trace.rounds) {
    DescentRound d;
    d.round = r.round;
    d.bound = -0.5 * r.sum_lr_theta_grad_sq - 0.5 * r.sum_lr_w_grad_sq + 0.5 * lipschitz * variance * r.sum_lr_w_sq;
    d.observed = r.loss - prev;
    prev = r.loss;
    rep.rounds.push_back(d);
  }
  const std::size_t n = rep.rounds.size();
  const std::size_t w = std::min(window, n);
  for (std::size_t s = 0; s + w <= n; ++s) {
    double obs = 0.0, bnd = 0.0, scale = 0.0;
    for (std::size_t i = s; i < s + w; ++i) {
      obs += rep.rounds[i].observed;
      bnd += rep.rounds[i].bound;
      scale = std::max(scale, std::abs(trace.rounds[i].loss));
    }
    ++rep.windows;
    // Roundoff allowance for the stationary case, where both sides are ~0.
    if (obs / static_cast<double>(w) <= bnd / static_cast<double>(w) + 1e-12 * (1.0 + scale)) ++rep.windows_satisfied;
  }
  return rep;
}

}  // namespace agp::train
