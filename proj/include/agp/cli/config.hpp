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
#include <optional>
#include <string>
#include <vector>

#include "agp/data/dataset.hpp"
#include "agp/eval/eval.hpp"
#include "agp/gp/layer.hpp"
#include "agp/model/config.hpp"
#include "agp/train/trainer.hpp"

namespace agp::cli {

/// Where the data comes from. Generator options that are not set keep the
/// generator defaults.
struct DatasetSpec {
  std::string name;  ///< sin | suspension | load | csv
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_points;  ///< sin
  std::optional<std::size_t> n_steps;   ///< suspension, load
  std::optional<double> noise_sd;
  std::optional<double> alpha;  ///< suspension nonlinearity
  std::string path;             ///< csv
  std::vector<std::string> input_cols;
  std::string target_col;
};

enum class TrainerKind { kBlockwise, kFullbatch };

struct ExperimentConfig {
  DatasetSpec dataset;
  model::ModelConfig model;
  train::TrainConfig train;
  bool t1_auto = true;  ///< T1 = batches per epoch
  TrainerKind trainer = TrainerKind::kBlockwise;
  gp::GpSettings gp;
  eval::Mode eval_mode = eval::Mode::kPrediction;
  std::optional<std::uint64_t> sample_seed;  ///< generation draws y_i instead of feeding back the mean
  std::size_t compare_seeds = 10;
  std::size_t baseline_epochs = 300;  ///< Gaussian-head contrast model
  double baseline_lr = 1e-2;
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  /// Resolved configuration in the same key = value grammar; parsing it
  /// back yields an equal configuration.
  std::string to_text() const;
};

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// ignored; keys are dotted (`model.d_x`). Unknown keys, duplicate keys,
/// malformed lines and bad values raise ConfigError with `source:line`.
/// A missing dataset.name raises ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

std::string to_string(TrainerKind kind);

}  // namespace agp::cli
