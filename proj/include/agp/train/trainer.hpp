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
#include <functional>
#include <string>

#include "agp/data/dataset.hpp"
#include "agp/model/attentive_gp.hpp"
#include "agp/train/adam.hpp"
#include "agp/train/schedule.hpp"
#include "agp/train/trace.hpp"

namespace agp::train {

enum class Optimizer { kAdam, kSgd };
enum class Block { kW, kTheta };

std::string to_string(Optimizer opt);
Optimizer parse_optimizer(const std::string& text);

struct TrainConfig {
  std::size_t T1 = 1;          ///< W steps per round
  std::size_t T2 = 1;          ///< theta steps per round
  double lr_w = 1e-3;          ///< base rate; 0 freezes the block
  double lr_theta = 1e-2;
  std::size_t batch_size = 1;  ///< sequences per W step
  std::size_t epochs = 100;    ///< outer rounds
  std::uint64_t seed = 1;      ///< batch shuffling
  Optimizer optimizer = Optimizer::kAdam;
  AdamOptions adam;
  ScheduleKind schedule = ScheduleKind::kConstant;
  std::size_t warmup = 5;      ///< rounds before theta starts moving
  bool record_time = false;    ///< fill the seconds column (breaks byte-identical traces)

  /// Called before every inner update with the gradient about to be applied
  /// and the model state it was computed at.
  std::function<void(Block, std::size_t round, const ParamSet& grad, const model::AttentiveGp& state)> observer;

  /// Throws ConfigError naming the offending field.
  void validate(std::size_t n_sequences) const;
};

/// ceil(n / batch_size): the W-step count that makes one round one epoch.
std::size_t batches_per_epoch(std::size_t n_sequences, std::size_t batch_size);

struct TrainResult {
  model::AttentiveGp model;
  TrainTrace trace;
};

/// Alternating optimization. Each round runs T1 mini-batch steps on W with
/// theta frozen, the loss being the GP objective of the batch's own rows,
/// then T2 full-batch steps on theta with W frozen. Batches are drawn by
/// shuffling the sequences once per pass without replacement.
/// A ConditioningError is rethrown with the round index prepended.
TrainResult blockwise_train(model::AttentiveGp model, const data::SequenceDataset& train, const TrainConfig& cfg);

/// Joint update of W and theta from the full-batch gradient, one step per
/// round. T1, T2 and batch_size are ignored.
TrainResult fullbatch_train(model::AttentiveGp model, const data::SequenceDataset& train, const TrainConfig& cfg);

/// Feature extractor plus Gaussian head trained on the Gaussian NLL with
/// full-batch Adam; the contrast model for the extrapolation check.
struct BaselineResult {
  ParamSet weights;  ///< network and "baseline." head weights
  TrainTrace trace;
};

BaselineResult train_gaussian_baseline(const model::ModelConfig& cfg, const data::SequenceDataset& train,
                                       std::size_t epochs, double lr, std::uint64_t seed);

}  // namespace agp::train
