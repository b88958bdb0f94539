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

#include "agp/train/trace.hpp"

#include <fstream>

#include "agp/data/csv.hpp"
#include "agp/errors.hpp"

namespace agp::train {

using data::format_double;

std::string TrainTrace::to_csv() const {
  std::string out = "round,loss,grad_w_norm,grad_theta_norm,lr_w,lr_theta,seconds\n";
  for (const auto& r : rounds) {
    out += std::to_string(r.round);
    for (double v : {r.loss, r.grad_w_norm, r.grad_theta_norm, r.lr_w, r.lr_theta, r.seconds}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void TrainTrace::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << to_csv();
  if (!f) throw IoError("write failed for " + path);
}

double TrainTrace::final_loss() const { return rounds.empty() ? initial_loss : rounds.back().loss; }

}  // namespace agp::train
