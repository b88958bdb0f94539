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

// Finite-difference checks of every differentiable operation.

#include <doctest.h>

#include <string>
#include <vector>

#include "agp/autodiff/gradcheck.hpp"
#include "agp/autodiff/linalg.hpp"
#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"
#include "op_cases.hpp"
#include "oracles.hpp"

using namespace agp;
using namespace agp::ad;

namespace {

constexpr double kTol = 1e-4;

}  // namespace

TEST_CASE("finite_diff_check examples") {
  // Quadratic form x^T A x: central differences are exact up to roundoff.
  const Tensor a = oracle::random_tensor(4, 4, 3);
  auto quad = [&a](Tape& t, Var x) { return sum(mul(matmul(transpose(x), matmul(t.constant(a), x)), t.constant(Tensor::scalar(1.0)))); };
  CHECK(finite_diff_check(quad, oracle::random_tensor(4, 1, 4)) < 1e-9);
  // Constant function: both gradients are zero and the error is zero.
  auto constant = [](Tape& t, Var x) {
    (void)x;
    return sum(t.constant(Tensor::scalar(3.0)));
  };
  CHECK(finite_diff_check(constant, oracle::random_tensor(3, 2, 5)) == 0.0);
}

TEST_CASE("every differentiable op passes finite differences over 10 seeds") {
  for (const auto& c : oracle::op_cases()) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto rep = finite_diff_report(c.f, c.inputs(seed));
      worst = std::max(worst, rep.max_rel_error);
    }
    INFO(c.name << " worst relative error " << worst);
    CHECK(worst < kTol);
  }
}

TEST_CASE("cholesky jitter escalation and failure") {
  Tape tape;
  // Rank-one PSD matrix: needs jitter.
  const Tensor v = oracle::random_tensor(4, 1, 9);
  const Tensor singular = oracle::naive_matmul(v, v.transposed());
  const auto r = cholesky(tape.constant(singular));
  CHECK(r.jitter > 0.0);
  CHECK(r.jitter <= 1e-4);
  // Strongly indefinite: every attempt fails and the last jitter is named.
  const Tensor bad = Tensor::matrix({{1.0, 0.0}, {0.0, -1.0}});
  try {
    cholesky(tape.constant(bad));
    FAIL("expected ConditioningError");
  } catch (const ConditioningError& e) {
    CHECK(std::string(e.what()).find("0.0001") != std::string::npos);
  }
  // Well-conditioned input: no jitter.
  CHECK(cholesky(tape.constant(oracle::spd(5, 1))).jitter == 0.0);
}
