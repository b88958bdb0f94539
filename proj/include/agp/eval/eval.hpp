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
#include <span>
#include <string>
#include <vector>

#include "agp/data/dataset.hpp"
#include "agp/gp/exact.hpp"
#include "agp/model/attentive_gp.hpp"

namespace agp::eval {

enum class Mode { kPrediction, kGeneration };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Per-step predictive mean and +-2 sigma band in observation space.
struct GenerationResult {
  std::vector<double> mean;
  std::vector<double> variance;  ///< latent variance plus noise variance
  std::vector<double> lo;
  std::vector<double> hi;
  Mode mode = Mode::kPrediction;

  std::size_t size() const { return mean.size(); }
};

/// Trained model plus the GP posterior over its training features, computed
/// once and shared by every query. Queries always use the exact posterior,
/// also for models trained on the KISS objective.
class Predictor {
 public:
  Predictor(model::AttentiveGp model, const data::SequenceDataset& train);

  /// Teacher forcing: step t conditions on the observed y_1..y_{t-1}. One
  /// decoder pass yields every step.
  GenerationResult predict(const Tensor& x, const Tensor& y_observed) const;

  /// Autoregressive rollout: step t conditions on the model's own outputs
  /// for steps before t. Feeds back predictive means, or draws from the
  /// predictive distribution when `sample_seed` is given.
  GenerationResult generate(const Tensor& x, std::optional<std::uint64_t> sample_seed = std::nullopt) const;

  const gp::GpPosterior& posterior() const { return posterior_; }
  const model::AttentiveGp& model() const { return model_; }

 private:
  model::AttentiveGp model_;
  gp::GpPosterior posterior_;
};

/// Teacher-forced prediction of the Gaussian-head contrast model; the band is
/// mean +- 2 exp(log_var / 2).
GenerationResult predict_baseline(const ParamSet& weights, const model::ModelConfig& cfg, const Tensor& x,
                                  const Tensor& y_observed);

/// RMSE divided by (max - min) of the targets. Throws ContractError when the
/// targets are all equal, empty, or lengths differ.
double nrmse(std::span<const double> pred_mean, std::span<const double> targets);

/// Fraction of targets inside [lo, hi].
double coverage_2sigma(const GenerationResult& result, std::span<const double> targets);

/// Maps mean and band back to target units; the variance is rescaled too.
GenerationResult denormalize(const GenerationResult& r, const data::NormalizationRecord& record);

/// `t,target,mean,lo,hi`, t starting at 1.
void write_sequence_csv(const std::string& path, const GenerationResult& r, std::span<const double> targets);

struct MetricRow {
  std::string dataset;
  std::string mode;
  double nrmse = 0.0;
  double coverage = 0.0;
  std::uint64_t seed = 0;
};

/// `dataset,mode,nrmse,coverage,seed`.
void write_metrics_csv(const std::string& path, const std::vector<MetricRow>& rows);

}  // namespace agp::eval
