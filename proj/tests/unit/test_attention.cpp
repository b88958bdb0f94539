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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "agp/autodiff/ops.hpp"
#include "agp/errors.hpp"
#include "agp/model/attention.hpp"
#include "oracles.hpp"

using namespace agp;
using namespace agp::ad;
using agp::model::HeadProjections;

TEST_CASE("positional encoding values") {
  const Tensor pe = model::positional_encoding(7, 6);
  for (std::size_t c = 0; c < 6; ++c) CHECK(pe(0, c) == (c % 2 == 0 ? 0.0 : 1.0));
  for (double v : pe.data()) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  CHECK(std::abs(pe(1, 0) - std::sin(1.0)) < 1e-15);
  CHECK(std::abs(pe(1, 0) - 0.841471) < 1e-6);
  // Column pair i uses frequency 1 / 10000^(2i/d).
  CHECK(std::abs(pe(3, 3) - std::cos(3.0 / std::pow(10000.0, 2.0 / 6.0))) < 1e-15);
  CHECK(model::positional_encoding(1, 1)(0, 0) == 0.0);
}

TEST_CASE("attention against the straight-loop oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Tape tape;
    const Tensor q = oracle::random_tensor(3, 4, seed), k = oracle::random_tensor(3, 4, seed + 50);
    const Tensor wq = oracle::random_tensor(4, 2, seed + 1), wk = oracle::random_tensor(4, 2, seed + 2),
                 wv = oracle::random_tensor(4, 3, seed + 3);
    HeadProjections head{tape.constant(wq), tape.constant(wk), tape.constant(wv)};
    for (bool causal : {false, true}) {
      std::optional<Var> mask;
      if (causal) mask = tape.constant(model::causal_mask(3));
      const auto got = model::attention(tape.constant(q), tape.constant(k), head, mask);
      const auto want = oracle::loop_attention(q, k, wq, wk, wv, causal);
      CHECK(max_abs_diff(got.output.value(), want.output) < 1e-12);
      CHECK(max_abs_diff(got.weights.value(), want.weights) < 1e-12);
      for (std::size_t i = 0; i < 3; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < 3; ++j) row += got.weights.value()(i, j);
        CHECK(std::abs(row - 1.0) < 1e-12);
        if (causal)
          for (std::size_t j = i + 1; j < 3; ++j) CHECK(got.weights.value()(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("attention degenerate cases") {
  Tape tape;
  const Tensor wq = oracle::random_tensor(3, 2, 1), wk = oracle::random_tensor(3, 2, 2), wv = oracle::random_tensor(3, 2, 3);
  HeadProjections head{tape.constant(wq), tape.constant(wk), tape.constant(wv)};
  // One key: weight 1, output is the projected value whatever the query.
  const Tensor key = oracle::random_tensor(1, 3, 4);
  const auto one = model::attention(tape.constant(oracle::random_tensor(4, 3, 5)), tape.constant(key), head);
  const Tensor v = oracle::naive_matmul(key, wv);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(one.weights.value()(i, 0) == 1.0);
    for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(one.output.value()(i, c) - v(0, c)) < 1e-15);
  }
  // Identical key rows: uniform weights, output is the mean projected value.
  Tensor keys({3, 3});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t c = 0; c < 3; ++c) keys(i, c) = key(0, c);
  const auto same = model::attention(tape.constant(oracle::random_tensor(2, 3, 6)), tape.constant(keys), head);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(same.weights.value()(i, j) - 1.0 / 3.0) < 1e-15);
  // Mask shape must match.
  CHECK_THROWS_AS(model::attention(tape.constant(keys), tape.constant(keys), head, tape.constant(model::causal_mask(2))),
                  ShapeError);
}

TEST_CASE("multi-head attention structure") {
  Tape tape;
  const Tensor q = oracle::random_tensor(3, 4, 1), k = oracle::random_tensor(5, 4, 2);
  std::vector<Tensor> wq, wk, wv;
  for (std::uint64_t h = 0; h < 2; ++h) {
    wq.push_back(oracle::random_tensor(4, 2, 10 + h));
    wk.push_back(oracle::random_tensor(4, 2, 20 + h));
    wv.push_back(oracle::random_tensor(4, 2, 30 + h));
  }
  auto heads_for = [&](std::vector<std::size_t> order) {
    std::vector<HeadProjections> out;
    for (std::size_t h : order) out.push_back({tape.constant(wq[h]), tape.constant(wk[h]), tape.constant(wv[h])});
    return out;
  };

  SUBCASE("one head with identity output projection is single-head attention") {
    const auto heads = heads_for({0});
    const Var mha = model::multi_head_attention(tape.constant(q), tape.constant(k), heads, tape.constant(Tensor::identity(2)));
    const auto single = oracle::loop_attention(q, k, wq[0], wk[0], wv[0], false);
    CHECK(max_abs_diff(mha.value(), single.output) < 1e-12);
  }

  SUBCASE("two heads equal two single-head runs concatenated and projected") {
    const Tensor wo = oracle::random_tensor(4, 3, 40);
    const Var mha = model::multi_head_attention(tape.constant(q), tape.constant(k), heads_for({0, 1}), tape.constant(wo));
    const auto a = oracle::loop_attention(q, k, wq[0], wk[0], wv[0], false).output;
    const auto b = oracle::loop_attention(q, k, wq[1], wk[1], wv[1], false).output;
    Tensor cat({3, 4});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 2; ++c) {
        cat(i, c) = a(i, c);
        cat(i, c + 2) = b(i, c);
      }
    CHECK(max_abs_diff(mha.value(), oracle::naive_matmul(cat, wo)) < 1e-12);
  }

  SUBCASE("permuting heads with matching output rows leaves the result unchanged") {
    const Tensor wo = oracle::random_tensor(4, 3, 41);
    Tensor wo_perm({4, 3});
    for (std::size_t c = 0; c < 3; ++c) {
      wo_perm(0, c) = wo(2, c);
      wo_perm(1, c) = wo(3, c);
      wo_perm(2, c) = wo(0, c);
      wo_perm(3, c) = wo(1, c);
    }
    const Var a = model::multi_head_attention(tape.constant(q), tape.constant(k), heads_for({0, 1}), tape.constant(wo));
    const Var b = model::multi_head_attention(tape.constant(q), tape.constant(k), heads_for({1, 0}), tape.constant(wo_perm));
    CHECK(max_abs_diff(a.value(), b.value()) < 1e-14);
  }
}

TEST_CASE("causal mask layout") {
  const Tensor m = model::causal_mask(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == (j <= i ? 0.0 : model::kMaskedLogit));
}
