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

#include "agp/model/attentive_gp.hpp"

#include <numeric>

#include "agp/errors.hpp"
#include "agp/model/network.hpp"

namespace agp::model {

AttentiveGp AttentiveGp::create(const ModelConfig& cfg, const gp::GpSettings& gp, std::uint64_t seed) {
  cfg.validate();
  AttentiveGp m;
  m.config = cfg;
  m.gp = gp;
  m.weights = init_params(cfg, seed);
  m.theta = gp::GPHyperparams::initial(cfg.F).to_params();
  return m;
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"input_dim", c.input_dim}, {"d_x", c.d_x}, {"d_h", c.d_h}, {"n_layers", c.n_layers},
          {"n_heads", c.n_heads},     {"d_k", c.d_k}, {"d_c", c.d_c}, {"F", c.F},
          {"L", c.L}};
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.input_dim = j.at("input_dim").get<std::size_t>();
    c.d_x = j.at("d_x").get<std::size_t>();
    c.d_h = j.at("d_h").get<std::size_t>();
    c.n_layers = j.at("n_layers").get<std::size_t>();
    c.n_heads = j.at("n_heads").get<std::size_t>();
    c.d_k = j.at("d_k").get<std::size_t>();
    c.d_c = j.at("d_c").get<std::size_t>();
    c.F = j.at("F").get<std::size_t>();
    c.L = j.at("L").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad model config in checkpoint: ") + e.what());
  }
  return c;
}

Checkpoint AttentiveGp::to_checkpoint(nlohmann::json extra_meta) const {
  Checkpoint ck;
  ck.tensors = weights.merged(theta);
  ck.meta = std::move(extra_meta);
  ck.meta["model"] = to_json(config);
  ck.meta["gp"] = {{"mode", gp::to_string(gp.mode)}, {"inducing", gp.inducing}};
  return ck;
}

AttentiveGp AttentiveGp::from_checkpoint(const Checkpoint& ck) {
  if (!ck.meta.contains("model") || !ck.meta.contains("gp")) throw DataError("checkpoint lacks model metadata");
  AttentiveGp m;
  m.config = model_config_from_json(ck.meta["model"]);
  try {
    m.gp.mode = gp::parse_gp_mode(ck.meta["gp"].at("mode").get<std::string>());
    m.gp.inducing = ck.meta["gp"].at("inducing").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad gp settings in checkpoint: ") + e.what());
  }
  m.theta = ck.tensors.with_prefix("gp.");
  ParamSet w;
  for (const auto& [name, t] : ck.tensors) {
    if (name.rfind("gp.", 0) != 0) w.set(name, t);
  }
  m.weights = std::move(w);

  // The tensors must have exactly the shapes a fresh model of this config has.
  const ParamSet expect = init_params(m.config, 0).merged(gp::GPHyperparams::initial(m.config.F).to_params());
  if (expect.size() != ck.tensors.size()) throw DataError("checkpoint tensors do not match the stored config");
  for (const auto& [name, t] : expect) {
    if (!ck.tensors.contains(name) || ck.tensors.at(name).shape() != t.shape()) {
      throw DataError("checkpoint tensor '" + name + "' missing or misshapen for the stored config");
    }
  }
  return m;
}

LossEval objective(const AttentiveGp& m, const data::SequenceDataset& ds, std::span<const std::size_t> indices,
                   bool grad_w, bool grad_theta) {
  ad::Tape tape;
  BoundParams w = BoundParams::bind(tape, m.weights, grad_w);
  BoundParams th = BoundParams::bind(tape, m.theta, grad_theta);
  Var feats = batch_features(tape, w, m.config, ds.inputs, ds.targets, indices);
  Var y = tape.constant(ds.stacked_targets(indices));
  Var loss = gp::gp_loss(feats, y, gp::HyperVars::from(th), m.gp);
  LossEval out;
  out.loss = loss.value().item();
  if (grad_w || grad_theta) {
    tape.backward(loss);
    if (grad_w) out.grad_w = w.gradients(tape);
    if (grad_theta) out.grad_theta = th.gradients(tape);
  }
  return out;
}

LossEval full_objective(const AttentiveGp& m, const data::SequenceDataset& ds, bool grad_w, bool grad_theta) {
  std::vector<std::size_t> idx(ds.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return objective(m, ds, idx, grad_w, grad_theta);
}

LossEval theta_objective(const Tensor& features, const Tensor& targets, const ParamSet& theta,
                         const gp::GpSettings& settings, bool grad_theta) {
  ad::Tape tape;
  BoundParams th = BoundParams::bind(tape, theta, grad_theta);
  Var loss = gp::gp_loss(tape.constant(features), tape.constant(targets), gp::HyperVars::from(th), settings);
  LossEval out;
  out.loss = loss.value().item();
  if (grad_theta) {
    tape.backward(loss);
    out.grad_theta = th.gradients(tape);
  }
  return out;
}

}  // namespace agp::model
