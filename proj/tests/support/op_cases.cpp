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

#include "op_cases.hpp"

#include "agp/autodiff/linalg.hpp"
#include "agp/autodiff/ops.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace agp::ad;

Tensor spd(std::size_t n, std::uint64_t seed) {
  const Tensor a = oracle::random_tensor(n, n, seed);
  Tensor s = oracle::naive_matmul(a, a.transposed());
  for (std::size_t i = 0; i < n; ++i) s(i, i) += static_cast<double>(n);
  return s;
}

namespace {

// Reduces a matrix output to a scalar with fixed random weights so that
// every output entry contributes a distinct amount.
Var weighted_sum(Tape& tape, Var y, std::uint64_t seed) {
  return sum(mul(y, tape.constant(oracle::random_tensor(y.rows(), y.cols(), seed + 1000, 0.5, 1.5))));
}

Tensor away_from_zero(std::size_t r, std::size_t c, std::uint64_t seed) {
  Tensor t = oracle::random_tensor(r, c, seed);
  for (double& v : t.data()) v += v >= 0.0 ? 0.1 : -0.1;
  return t;
}

}  // namespace

std::vector<OpCase> op_cases() {
  std::vector<OpCase> cases;
  cases.push_back({"matmul", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, matmul(v[0], v[1]), 1); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(4, 2, s + 1)}; }});
  cases.push_back({"transpose", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, transpose(v[0]), 2); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s)}; }});
  cases.push_back({"add", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, add(v[0], v[1]), 3); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(3, 4, s + 1)}; }});
  cases.push_back({"add_row_broadcast", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, add(v[0], v[1]), 4); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(1, 4, s + 1)}; }});
  cases.push_back({"sub", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, sub(v[0], v[1]), 5); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(1, 4, s + 1)}; }});
  cases.push_back({"mul", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, mul(v[0], v[1]), 6); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(3, 4, s + 1)}; }});
  cases.push_back({"mul_row_broadcast", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, mul(v[0], v[1]), 7); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s), oracle::random_tensor(1, 4, s + 1)}; }});
  cases.push_back({"scale", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, scale(v[0], -1.7), 8); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s)}; }});
  cases.push_back({"add_scalar", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, mul(add_scalar(v[0], 0.3), v[0]), 9); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s)}; }});
  cases.push_back({"relu", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, relu(v[0]), 10); },
                   [](std::uint64_t s) { return std::vector<Tensor>{away_from_zero(3, 4, s)}; }});
  cases.push_back({"exp", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, agp::ad::exp(v[0]), 11); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s)}; }});
  cases.push_back({"log", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, agp::ad::log(v[0]), 12); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s, 0.2, 2.0)}; }});
  cases.push_back({"softmax_rows", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, softmax_rows(v[0]), 13); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 5, s, -2.0, 2.0)}; }});
  cases.push_back({"sum", [](Tape&, std::span<const Var> v) { return sum(mul(v[0], v[0])); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 4, s)}; }});
  cases.push_back({"sq_dist", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, sq_dist(v[0], v[1]), 14); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(4, 3, s), oracle::random_tensor(5, 3, s + 1)}; }});
  cases.push_back({"sq_dist_self", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, sq_dist(v[0], v[0]), 15); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(4, 3, s)}; }});
  cases.push_back({"concat_rows", [](Tape& t, std::span<const Var> v) { const Var p[] = {v[0], v[1]}; return weighted_sum(t, concat_rows(p), 16); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(2, 3, s), oracle::random_tensor(4, 3, s + 1)}; }});
  cases.push_back({"concat_cols", [](Tape& t, std::span<const Var> v) { const Var p[] = {v[0], v[1]}; return weighted_sum(t, concat_cols(p), 17); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 2, s), oracle::random_tensor(3, 4, s + 1)}; }});
  cases.push_back({"slice_rows", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, slice_rows(v[0], 1, 3), 18); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(4, 3, s)}; }});
  cases.push_back({"slice_cols", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, slice_cols(v[0], 0, 2), 19); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(4, 3, s)}; }});
  cases.push_back({"cholesky", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, cholesky(v[0]).factor, 20); },
                   [](std::uint64_t s) { return std::vector<Tensor>{spd(4, s)}; }});
  cases.push_back({"tri_solve_lower", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, tri_solve_lower(cholesky(v[0]).factor, v[1]), 21); },
                   [](std::uint64_t s) { return std::vector<Tensor>{spd(4, s), oracle::random_tensor(4, 2, s + 1)}; }});
  cases.push_back({"sum_log_diag", [](Tape&, std::span<const Var> v) { return sum_log_diag(cholesky(v[0]).factor); },
                   [](std::uint64_t s) { return std::vector<Tensor>{spd(5, s)}; }});
  cases.push_back({"add_scaled_identity", [](Tape& t, std::span<const Var> v) { return weighted_sum(t, add_scaled_identity(v[0], v[1]), 22); },
                   [](std::uint64_t s) { return std::vector<Tensor>{oracle::random_tensor(3, 3, s), oracle::random_tensor(1, 1, s + 1)}; }});
  return cases;
}

}  // namespace oracle
