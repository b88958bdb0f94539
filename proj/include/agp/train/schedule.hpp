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

/// Learning-rate rule over outer rounds k = 1, 2, ...
enum class ScheduleKind { kConstant, kInvK, kInvSqrtK };

struct ScheduleRule {
  ScheduleKind kind = ScheduleKind::kConstant;
  double base = 1e-3;

  double at(std::size_t k) const;  ///< base, base / k or base / sqrt(k)
};

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule(const std::string& text);

std::vector<double> lr_sequence(const ScheduleRule& rule, std::size_t horizon);

/// Robbins-Monro flags for one block. `non_increasing` is checked on the
/// finite sequence; the two sum properties are facts about the rule itself.
struct ScheduleFlags {
  bool non_increasing = false;
  bool sum_diverges = false;
  bool squares_converge = false;
  bool satisfied() const { return non_increasing && sum_diverges && squares_converge; }
};

struct ScheduleReport {
  ScheduleFlags w;
  ScheduleFlags theta;
  /// Human-readable lines, one per violated condition.
  std::vector<std::string> notes;
  bool satisfied() const { return w.satisfied() && theta.satisfied(); }
};

ScheduleReport check_schedule(const ScheduleRule& lr_w, const ScheduleRule& lr_theta, std::size_t horizon);

}  // namespace agp::train
