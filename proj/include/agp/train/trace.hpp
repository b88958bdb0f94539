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

#include <string>
#include <vector>

namespace agp::train {

/// One completed outer round. The first seven fields are exported; the rest
/// feed the descent monitor.
struct RoundRecord {
  std::size_t round = 0;  ///< 1-based
  double loss = 0.0;      ///< full-batch objective after the round
  double grad_w_norm = 0.0;
  double grad_theta_norm = 0.0;
  double lr_w = 0.0;
  double lr_theta = 0.0;
  double seconds = 0.0;  ///< wall time of the round, 0 unless timing is enabled

  // Sums over the inner steps of this round.
  double sum_lr_theta_grad_sq = 0.0;  ///< sum of lr_theta * |grad_theta|^2
  double sum_lr_w_grad_sq = 0.0;      ///< sum of lr_w * |g_W|^2, g_W in full-batch units
  double sum_lr_w_sq = 0.0;           ///< sum of lr_w^2
  double max_stoch_grad_sq = 0.0;     ///< max |g_W|^2 over the W steps
  /// |grad_k - grad_{k-1}| / |params_k - params_{k-1}| for the full-batch
  /// gradient of both blocks; 0 when undefined.
  double lipschitz_ratio = 0.0;
};

struct TrainTrace {
  double initial_loss = 0.0;
  std::vector<RoundRecord> rounds;

  /// Header `round,loss,grad_w_norm,grad_theta_norm,lr_w,lr_theta,seconds`
  /// and one %.17g row per round.
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  double final_loss() const;
};

}  // namespace agp::train
