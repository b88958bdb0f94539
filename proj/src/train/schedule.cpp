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

#include "agp/train/schedule.hpp"

#include <cmath>

#include "agp/errors.hpp"

namespace agp::train {

double ScheduleRule::at(std::size_t k) const {
  const double kk = static_cast<double>(k == 0 ? 1 : k);
  switch (kind) {
    case ScheduleKind::kConstant:
      return base;
    case ScheduleKind::kInvK:
      return base / kk;
    case ScheduleKind::kInvSqrtK:
      return base / std::sqrt(kk);
  }
  return base;
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstant:
      return "constant";
    case ScheduleKind::kInvK:
      return "inv_k";
    case ScheduleKind::kInvSqrtK:
      return "inv_sqrt_k";
  }
  return "constant";
}

ScheduleKind parse_schedule(const std::string& text) {
  if (text == "constant") return ScheduleKind::kConstant;
  if (text == "inv_k") return ScheduleKind::kInvK;
  if (text == "inv_sqrt_k") return ScheduleKind::kInvSqrtK;
  throw ConfigError("train.schedule must be constant, inv_k or inv_sqrt_k, got '" + text + "'");
}

std::vector<double> lr_sequence(const ScheduleRule& rule, std::size_t horizon) {
  std::vector<double> out(horizon);
  for (std::size_t k = 0; k < horizon; ++k) out[k] = rule.at(k + 1);
  return out;
}

namespace {

ScheduleFlags flags_for(const ScheduleRule& rule, std::size_t horizon, const std::string& block,
                        std::vector<std::string>& notes) {
  ScheduleFlags f;
  const auto seq = lr_sequence(rule, horizon);
  f.non_increasing = true;
  for (std::size_t k = 1; k < seq.size(); ++k) f.non_increasing = f.non_increasing && seq[k] <= seq[k - 1];
  // sum c k^-p diverges iff p <= 1; sum of squares converges iff 2p > 1.
  const double p = rule.kind == ScheduleKind::kConstant ? 0.0 : rule.kind == ScheduleKind::kInvK ? 1.0 : 0.5;
  f.sum_diverges = rule.base > 0.0 && p <= 1.0;
  f.squares_converge = 2.0 * p > 1.0 || rule.base == 0.0;
  const std::string name = block + " (" + to_string(rule.kind) + ")";
  if (!f.non_increasing) notes.push_back(name + ": rates increase within the horizon");
  if (!f.sum_diverges) notes.push_back(name + ": sum of rates converges");
  if (!f.squares_converge) {
    notes.push_back(name + ": sum of squared rates diverges" +
                    std::string(rule.kind == ScheduleKind::kConstant
                                    ? " (constant rates are the usual experimental choice; the bound only holds "
                                      "for a finite horizon)"
                                    : ""));
  }
  return f;
}

}  // namespace

ScheduleReport check_schedule(const ScheduleRule& lr_w, const ScheduleRule& lr_theta, std::size_t horizon) {
  ScheduleReport r;
  r.w = flags_for(lr_w, horizon, "lr_w", r.notes);
  r.theta = flags_for(lr_theta, horizon, "lr_theta", r.notes);
  return r;
}

}  // namespace agp::train
