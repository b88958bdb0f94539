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

#include "agp/data/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "agp/errors.hpp"

namespace agp::data {

std::string to_string(Split split) { return split == Split::kTrain ? "train" : "test"; }

std::size_t SequenceDataset::length() const { return inputs.empty() ? 0 : inputs.front().rows(); }

std::size_t SequenceDataset::input_dim() const { return inputs.empty() ? 0 : inputs.front().cols(); }

void SequenceDataset::validate() const {
  if (inputs.size() != targets.size()) {
    throw DataError("dataset has " + std::to_string(inputs.size()) + " input windows but " +
                    std::to_string(targets.size()) + " target windows");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].rows() != length() || inputs[i].cols() != input_dim() || targets[i].rows() != length() ||
        targets[i].cols() != 1) {
      throw DataError("window " + std::to_string(i) + " is misaligned");
    }
  }
}

Tensor SequenceDataset::stacked_targets() const {
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return stacked_targets(idx);
}

Tensor SequenceDataset::stacked_targets(std::span<const std::size_t> indices) const {
  const std::size_t len = length();
  Tensor out({indices.size() * len, 1});
  for (std::size_t k = 0; k < indices.size(); ++k)
    for (std::size_t t = 0; t < len; ++t) out(k * len + t, 0) = targets.at(indices[k])(t, 0);
  return out;
}

SequenceDataset window_series(const std::vector<std::vector<double>>& inputs, const std::vector<double>& targets,
                              std::size_t length, Split split) {
  if (length == 0) throw ContractError("window length must be positive");
  if (inputs.size() != targets.size()) throw DataError("input and target series lengths differ");
  SequenceDataset ds;
  ds.split = split;
  const std::size_t channels = inputs.empty() ? 0 : inputs.front().size();
  for (std::size_t start = 0; start + length <= inputs.size(); start += length) {
    Tensor x({length, channels});
    Tensor y({length, 1});
    for (std::size_t t = 0; t < length; ++t) {
      if (inputs[start + t].size() != channels) throw DataError("ragged input series");
      for (std::size_t c = 0; c < channels; ++c) x(t, c) = inputs[start + t][c];
      y(t, 0) = targets[start + t];
    }
    ds.inputs.push_back(std::move(x));
    ds.targets.push_back(std::move(y));
  }
  return ds;
}

DatasetSplits chronological_split(SequenceDataset all, double train_fraction) {
  const std::size_t n = all.size();
  std::size_t n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, n ? 1 : 0, n);
  DatasetSplits out;
  out.train.split = Split::kTrain;
  out.test.split = Split::kTest;
  for (std::size_t i = 0; i < n; ++i) {
    SequenceDataset& dst = i < n_train ? out.train : out.test;
    dst.inputs.push_back(std::move(all.inputs[i]));
    dst.targets.push_back(std::move(all.targets[i]));
  }
  return out;
}

double NormalizationRecord::normalize_input(std::size_t c, double v) const {
  const double range = input_max.at(c) - input_min.at(c);
  return range > 0.0 ? (v - input_min[c]) / range : 0.5;
}

double NormalizationRecord::denormalize_input(std::size_t c, double v) const {
  const double range = input_max.at(c) - input_min.at(c);
  return range > 0.0 ? v * range + input_min[c] : input_min[c];
}

double NormalizationRecord::normalize_target(double v) const {
  const double range = target_max - target_min;
  const double scaled = range > 0.0 ? (v - target_min) / range : 0.5;
  return scaled - target_mean;
}

double NormalizationRecord::denormalize_target(double v) const {
  const double range = target_max - target_min;
  const double scaled = v + target_mean;
  return range > 0.0 ? scaled * range + target_min : target_min;
}

nlohmann::json NormalizationRecord::to_json() const {
  return {{"input_min", input_min},
          {"input_max", input_max},
          {"target_min", target_min},
          {"target_max", target_max},
          {"target_mean", target_mean}};
}

NormalizationRecord NormalizationRecord::from_json(const nlohmann::json& j) {
  NormalizationRecord r;
  r.input_min = j.at("input_min").get<std::vector<double>>();
  r.input_max = j.at("input_max").get<std::vector<double>>();
  r.target_min = j.at("target_min").get<double>();
  r.target_max = j.at("target_max").get<double>();
  r.target_mean = j.at("target_mean").get<double>();
  return r;
}

NormalizationRecord fit_normalization(const SequenceDataset& train) {
  train.validate();
  if (train.empty()) throw DataError("cannot normalize an empty training split");
  const std::size_t channels = train.input_dim();
  NormalizationRecord r;
  r.input_min.assign(channels, INFINITY);
  r.input_max.assign(channels, -INFINITY);
  r.target_min = INFINITY;
  r.target_max = -INFINITY;
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (std::size_t t = 0; t < train.length(); ++t) {
      for (std::size_t c = 0; c < channels; ++c) {
        r.input_min[c] = std::min(r.input_min[c], train.inputs[i](t, c));
        r.input_max[c] = std::max(r.input_max[c], train.inputs[i](t, c));
      }
      r.target_min = std::min(r.target_min, train.targets[i](t, 0));
      r.target_max = std::max(r.target_max, train.targets[i](t, 0));
    }
  }
  double total = 0.0;
  std::size_t count = 0;
  r.target_mean = 0.0;
  for (const Tensor& y : train.targets) {
    for (double v : y.data()) {
      total += r.normalize_target(v);
      ++count;
    }
  }
  r.target_mean = total / static_cast<double>(count);
  return r;
}

SequenceDataset apply_normalization(const SequenceDataset& ds, const NormalizationRecord& record) {
  ds.validate();
  SequenceDataset out = ds;
  for (Tensor& x : out.inputs)
    for (std::size_t t = 0; t < x.rows(); ++t)
      for (std::size_t c = 0; c < x.cols(); ++c) x(t, c) = record.normalize_input(c, x(t, c));
  for (Tensor& y : out.targets)
    for (double& v : y.data()) v = record.normalize_target(v);
  out.normalization = record;
  return out;
}

DatasetSplits normalize(const DatasetSplits& raw) {
  const NormalizationRecord record = fit_normalization(raw.train);
  return {apply_normalization(raw.train, record), apply_normalization(raw.test, record)};
}

std::vector<double> denormalize_targets(const NormalizationRecord& record, std::span<const double> values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = record.denormalize_target(values[i]);
  return out;
}

}  // namespace agp::data
