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

#include "agp/model/baseline.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "agp/autodiff/ops.hpp"

namespace agp::model {

ParamSet init_baseline_head(const ModelConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double bound = std::sqrt(1.0 / static_cast<double>(cfg.F));
  std::uniform_real_distribution<double> dist(-bound, bound);
  auto draw = [&](std::size_t r, std::size_t c) {
    Tensor t({r, c});
    for (double& v : t.data()) v = dist(rng);
    return t;
  };
  ParamSet out;
  out.set("baseline.mean.w", draw(cfg.F, 1));
  out.set("baseline.mean.b", draw(1, 1));
  out.set("baseline.logvar.w", draw(cfg.F, 1));
  out.set("baseline.logvar.b", draw(1, 1));
  return out;
}

GaussianHead baseline_gaussian_head_forward(Var features, const BoundParams& p) {
  return {ad::add(ad::matmul(features, p["baseline.mean.w"]), p["baseline.mean.b"]),
          ad::add(ad::matmul(features, p["baseline.logvar.w"]), p["baseline.logvar.b"])};
}

Var gaussian_nll(const GaussianHead& head, Var targets) {
  Var resid = ad::sub(targets, head.mean);
  Var scaled = ad::mul(ad::mul(resid, resid), ad::exp(ad::scale(head.log_var, -1.0)));
  Var per_step = ad::add(head.log_var, scaled);
  const double n = static_cast<double>(targets.value().size());
  return ad::add_scalar(ad::scale(ad::sum(per_step), 0.5), 0.5 * n * std::log(2.0 * std::numbers::pi));
}

}  // namespace agp::model
