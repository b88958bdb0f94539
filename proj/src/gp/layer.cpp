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

#include "agp/gp/layer.hpp"

#include "agp/errors.hpp"

namespace agp::gp {

std::string to_string(GpMode mode) { return mode == GpMode::kExact ? "exact" : "kiss"; }

GpMode parse_gp_mode(const std::string& text) {
  if (text == "exact") return GpMode::kExact;
  if (text == "kiss") return GpMode::kKiss;
  throw ConfigError("gp.mode must be 'exact' or 'kiss', got '" + text + "'");
}

Var gp_loss(Var features, Var targets, const HyperVars& theta, const GpSettings& settings) {
  if (settings.mode == GpMode::kExact) return gp_nll(features, targets, theta);
  const InducingGrid grid = InducingGrid::build(features.value(), settings.inducing);
  return kiss_nll(features, targets, theta, grid);
}

}  // namespace agp::gp
