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

// Finite-difference cases covering every differentiable tape operation,
// shared by the unit and acceptance suites.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agp/autodiff/gradcheck.hpp"

namespace oracle {

using agp::ad::Tensor;

struct OpCase {
  std::string name;
  agp::ad::TapeFunction f;
  std::vector<Tensor> (*inputs)(std::uint64_t seed);
};

std::vector<OpCase> op_cases();

/// Random symmetric positive definite n x n matrix.
Tensor spd(std::size_t n, std::uint64_t seed);

}  // namespace oracle
