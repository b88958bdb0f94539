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

#include <cstdint>
#include <span>

#include <json.hpp>

#include "agp/data/dataset.hpp"
#include "agp/gp/layer.hpp"
#include "agp/model/checkpoint.hpp"
#include "agp/model/config.hpp"

namespace agp::model {

/// Feature extractor weights W plus GP hyperparameters theta, kept as two
/// separate blocks so trainers can update them independently.
struct AttentiveGp {
  ModelConfig config;
  gp::GpSettings gp;
  ParamSet weights;
  ParamSet theta;

  static AttentiveGp create(const ModelConfig& cfg, const gp::GpSettings& gp, std::uint64_t seed);

  gp::GPHyperparams hyperparams() const { return gp::GPHyperparams::from_params(theta); }

  /// Both blocks plus config and GP settings in the metadata.
  Checkpoint to_checkpoint(nlohmann::json extra_meta = nlohmann::json::object()) const;
  /// Throws DataError when the stored tensors do not match the stored config.
  static AttentiveGp from_checkpoint(const Checkpoint& ckpt);
};

nlohmann::json to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);

/// Objective value and the requested block gradients.
struct LossEval {
  double loss = 0.0;
  ParamSet grad_w;      ///< empty unless requested
  ParamSet grad_theta;  ///< empty unless requested
};

/// GP objective over the stacked rows of the selected sequences.
LossEval objective(const AttentiveGp& m, const data::SequenceDataset& ds, std::span<const std::size_t> indices,
                   bool grad_w, bool grad_theta);
/// Same over every sequence of the dataset.
LossEval full_objective(const AttentiveGp& m, const data::SequenceDataset& ds, bool grad_w, bool grad_theta);

/// Objective with W frozen, given precomputed features (rows x F).
LossEval theta_objective(const Tensor& features, const Tensor& targets, const ParamSet& theta,
                         const gp::GpSettings& settings, bool grad_theta);

}  // namespace agp::model
