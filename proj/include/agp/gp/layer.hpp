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

#include "agp/gp/exact.hpp"
#include "agp/gp/kiss.hpp"

namespace agp::gp {

enum class GpMode { kExact, kKiss };

struct GpSettings {
  GpMode mode = GpMode::kExact;
  std::size_t inducing = 64;  ///< requested grid size for kKiss
};

std::string to_string(GpMode mode);
GpMode parse_gp_mode(const std::string& text);

/// Training objective of the GP output layer under the chosen kernel path.
/// For kKiss the grid is rebuilt around the current feature values and
/// treated as a constant.
Var gp_loss(Var features, Var targets, const HyperVars& theta, const GpSettings& settings);

}  // namespace agp::gp
