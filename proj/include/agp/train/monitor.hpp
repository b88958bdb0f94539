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

#include "agp/train/trace.hpp"

namespace agp::train {

/// Plug-in constants for the sufficient-descent bound, estimated from a
/// trace: L as the largest observed gradient-difference to
/// parameter-difference ratio, M as the largest squared stochastic W
/// gradient norm.
double estimate_lipschitz(const TrainTrace& trace);
double estimate_variance_bound(const TrainTrace& trace);

struct DescentRound {
  std::size_t round = 0;
  double bound = 0.0;     ///< predicted upper bound on the loss change
  double observed = 0.0;  ///< loss_k - loss_{k-1}
};

struct DescentReport {
  double lipschitz = 0.0;
  double variance = 0.0;
  std::vector<DescentRound> rounds;
  std::size_t windows = 0;
  std::size_t windows_satisfied = 0;

  double fraction() const { return windows ? static_cast<double>(windows_satisfied) / static_cast<double>(windows) : 0.0; }
};

/// Per round, the bound
///   -1/2 sum lr_theta |grad_theta|^2 - 1/2 sum lr_w |g_W|^2 + 1/2 L M sum lr_w^2,
/// and, over every sliding window of `window` rounds (a single window when
/// the trace is shorter), whether the mean observed change stays below the
/// mean bound. Diagnostic only. Throws ContractError for fewer than 2 rounds.
DescentReport descent_monitor(const TrainTrace& trace, double lipschitz, double variance, std::size_t window = 10);

}  // namespace agp::train
