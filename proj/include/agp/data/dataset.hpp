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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "agp/autodiff/tensor.hpp"

namespace agp::data {

using ad::Tensor;

enum class Split { kTrain, kTest };

std::string to_string(Split split);

/// Per-channel min-max statistics of the training split plus the mean of the
/// scaled training targets. Channels with zero range map to 0.5.
struct NormalizationRecord {
  std::vector<double> input_min;
  std::vector<double> input_max;
  double target_min = 0.0;
  double target_max = 1.0;
  double target_mean = 0.0;  ///< mean of min-max scaled train targets

  double normalize_input(std::size_t channel, double v) const;
  double denormalize_input(std::size_t channel, double v) const;
  /// Min-max scaling followed by centering on target_mean.
  double normalize_target(double v) const;
  double denormalize_target(double v) const;

  nlohmann::json to_json() const;
  static NormalizationRecord from_json(const nlohmann::json& j);

  bool operator==(const NormalizationRecord&) const = default;
};

/// Aligned windows of inputs (each L x input_dim) and targets (each L x 1).
struct SequenceDataset {
  std::vector<Tensor> inputs;
  std::vector<Tensor> targets;
  Split split = Split::kTrain;
  std::optional<NormalizationRecord> normalization;

  std::size_t size() const { return inputs.size(); }
  std::size_t length() const;
  std::size_t input_dim() const;
  bool empty() const { return inputs.empty(); }

  /// Throws DataError when inputs and targets disagree in count or length.
  void validate() const;
  /// Targets of all windows stacked into one (size * L) x 1 column.
  Tensor stacked_targets() const;
  Tensor stacked_targets(std::span<const std::size_t> indices) const;
};

struct DatasetSplits {
  SequenceDataset train;
  SequenceDataset test;
};

/// Cuts a series (rows x channels) and its targets into non-overlapping
/// windows of length L, dropping a trailing remainder.
SequenceDataset window_series(const std::vector<std::vector<double>>& inputs, const std::vector<double>& targets,
                              std::size_t length, Split split);

/// Chronological split: the first round(0.8 n) windows (at least one) train.
DatasetSplits chronological_split(SequenceDataset all, double train_fraction = 0.8);

/// Fits statistics on the training split only.
NormalizationRecord fit_normalization(const SequenceDataset& train);
SequenceDataset apply_normalization(const SequenceDataset& ds, const NormalizationRecord& record);
/// Fits on train, applies to both splits; no clamping of test values.
DatasetSplits normalize(const DatasetSplits& raw);
std::vector<double> denormalize_targets(const NormalizationRecord& record, std::span<const double> values);

}  // namespace agp::data
