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

#include <exception>
#include <string>
#include <vector>

#include "agp/cli/config.hpp"
#include "agp/data/dataset.hpp"
#include "agp/eval/eval.hpp"
#include "agp/model/attentive_gp.hpp"
#include "agp/train/trainer.hpp"

namespace agp::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Maps an exception to an exit code: ConfigError -> 2; ConditioningError,
/// DomainError and GenerationError -> 3; IoError and DataError -> 4;
/// anything else -> 1.
int exit_code_for(const std::exception& e);

/// Generated or loaded data, normalized with train statistics; the record is
/// attached to both splits.
data::DatasetSplits build_dataset(const ExperimentConfig& cfg);

/// Model config with input_dim taken from the data.
model::ModelConfig resolved_model(const ExperimentConfig& cfg, const data::DatasetSplits& splits);
/// Train config with T1 resolved and the run seed applied.
train::TrainConfig resolved_train(const ExperimentConfig& cfg, std::size_t n_sequences);

struct TrainOutcome {
  data::DatasetSplits splits;
  train::TrainResult result;
};

TrainOutcome run_training(const ExperimentConfig& cfg);

struct EvalOutcome {
  std::vector<eval::GenerationResult> results;  ///< normalized units, one per test sequence
  std::vector<eval::MetricRow> rows;            ///< per sequence, then the pooled summary row
  eval::MetricRow summary;
};

EvalOutcome run_eval(const ExperimentConfig& cfg, const model::AttentiveGp& m, const data::DatasetSplits& splits,
                     eval::Mode mode);

struct SincheckRow {
  std::string region;  ///< in_sample | oos
  std::string model;   ///< attentive_gp | gaussian_head
  double mean_sigma = 0.0;         ///< observation-space predictive sigma
  double mean_latent_sigma = 0.0;  ///< GP head: sigma of f alone; equals mean_sigma for the Gaussian head
  double nrmse = 0.0;
};

struct SincheckOutcome {
  std::vector<SincheckRow> rows;
  double gp_ratio = 0.0;        ///< OOS / in-sample mean sigma, GP head
  double baseline_ratio = 0.0;  ///< same for the Gaussian head
  data::DatasetSplits splits;
  /// Teacher-forced results per region (train, test) and sequence.
  std::vector<std::vector<eval::GenerationResult>> gp_results;
  std::vector<std::vector<eval::GenerationResult>> baseline_results;
};

SincheckOutcome run_sincheck(const ExperimentConfig& cfg);

struct CompareOutcome {
  std::vector<std::uint64_t> seeds;
  std::vector<train::TrainTrace> blockwise;
  std::vector<train::TrainTrace> fullbatch;
  std::vector<double> final_blockwise;
  std::vector<double> final_fullbatch;
  /// First round whose loss is within 5% of the same seed's full-batch final
  /// loss (epochs + 1 when never reached).
  std::vector<std::size_t> reach_blockwise;
  std::vector<std::size_t> reach_fullbatch;
};

/// First round with loss <= target + 0.05 |target|; trace length + 1 when
/// never reached.
std::size_t rounds_to_reach(const train::TrainTrace& trace, double target);

/// Throws ConfigError when the data exceeds 5000 GP rows.
CompareOutcome run_compare(const ExperimentConfig& cfg);

// Commands: write their artifacts under cfg.out_dir and return an exit code.
// Errors propagate as exceptions; run_command maps them to exit codes.
void cmd_train(const ExperimentConfig& cfg);
void cmd_eval(const ExperimentConfig& cfg, const std::string& checkpoint, eval::Mode mode);
void cmd_sincheck(const ExperimentConfig& cfg);
void cmd_compare_trainers(const ExperimentConfig& cfg);

struct CommandLine {
  std::string command;  ///< train | eval | generate | sincheck | compare-trainers
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string checkpoint;  ///< eval/generate; defaults to <out>/checkpoint.agpc
};

/// Loads the config, applies overrides, runs the command, prints errors to
/// stderr and returns the exit code.
int run_command(const CommandLine& cl);

}  // namespace agp::cli
