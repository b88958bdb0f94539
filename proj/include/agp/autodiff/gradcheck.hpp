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

#include <functional>
#include <span>
#include <vector>

#include "agp/autodiff/tape.hpp"

namespace agp::ad {

using TapeFunction = std::function<Var(Tape&, std::span<const Var>)>;

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t worst_input = 0;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

/// Compares reverse-mode gradients of a scalar tape function against
/// central differences. Per coordinate the error is
/// |analytic - numeric| / (|analytic| + |numeric| + 1e-12).
GradCheckReport finite_diff_report(const TapeFunction& f, const std::vector<Tensor>& inputs, double h = 1e-5);

double finite_diff_check(const TapeFunction& f, const std::vector<Tensor>& inputs, double h = 1e-5);
double finite_diff_check(const std::function<Var(Tape&, Var)>& f, const Tensor& x, double h = 1e-5);

}  // namespace agp::ad
