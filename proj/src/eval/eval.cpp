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

#include "agp/eval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "agp/data/csv.hpp"
#include "agp/errors.hpp"
#include "agp/model/baseline.hpp"
#include "agp/model/network.hpp"

namespace agp::eval {
namespace {

gp::GpPosterior build_posterior(const model::AttentiveGp& m, const data::SequenceDataset& train) {
  if (train.empty()) throw ContractError("Predictor: empty training set");
  return gp::GpPosterior(model::compute_features(m.weights, m.config, train.inputs, train.targets),
                         train.stacked_targets(), m.hyperparams());
}

void fill_band(GenerationResult& r) {
  r.lo.resize(r.mean.size());
  r.hi.resize(r.mean.size());
  for (std::size_t i = 0; i < r.mean.size(); ++i) {
    const double s = std::sqrt(r.variance[i]);
    r.lo[i] = r.mean[i] - 2.0 * s;
    r.hi[i] = r.mean[i] + 2.0 * s;
  }
}

Tensor sequence_features(const model::AttentiveGp& m, const Tensor& x, const Tensor& y) {
  const Tensor xs[] = {x};
  const Tensor ys[] = {y};
  return model::compute_features(m.weights, m.config, xs, ys);
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::kPrediction ? "prediction" : "generation"; }

Mode parse_mode(const std::string& text) {
  if (text == "prediction") return Mode::kPrediction;
  if (text == "generation") return Mode::kGeneration;
  throw ConfigError("eval.mode must be prediction or generation, got '" + text + "'");
}

Predictor::Predictor(model::AttentiveGp m, const data::SequenceDataset& train)
    : model_(std::move(m)), posterior_(build_posterior(model_, train)) {}

GenerationResult Predictor::predict(const Tensor& x, const Tensor& y_observed) const {
  const std::size_t len = model_.config.L;
  if (x.rows() != len || y_observed.rows() != len || y_observed.cols() != 1) {
    throw ShapeError("predict: expected " + std::to_string(len) + "-step input and " + std::to_string(len) +
                     " x 1 observed outputs");
  }
  const auto dist = posterior_.predict(sequence_features(model_, x, y_observed), true);
  GenerationResult r;
  r.mode = Mode::kPrediction;
  r.mean = dist.mean;
  r.variance = dist.variance;
  fill_band(r);
  return r;
}

GenerationResult Predictor::generate(const Tensor& x, std::optional<std::uint64_t> sample_seed) const {
  const std::size_t len = model_.config.L;
  if (x.rows() != len) throw ShapeError("generate: expected a " + std::to_string(len) + "-step input");
  std::optional<std::mt19937_64> rng;
  if (sample_seed) rng.emplace(*sample_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Rows at and after step t of `fed` never influence step t.
  Tensor fed = Tensor::zeros(len, 1);
  GenerationResult r;
  r.mode = Mode::kGeneration;
  r.mean.resize(len);
  r.variance.resize(len);
  for (std::size_t t = 0; t < len; ++t) {
    const Tensor feats = sequence_features(model_, x, fed);
    const Tensor row = Tensor::from_eigen(feats.mat().row(static_cast<Eigen::Index>(t)));
    const auto dist = posterior_.predict(row, true);
    r.mean[t] = dist.mean[0];
    r.variance[t] = dist.variance[0];
    fed.data()[t] = rng ? r.mean[t] + std::sqrt(r.variance[t]) * gauss(*rng) : r.mean[t];
  }
  fill_band(r);
  return r;
}

GenerationResult predict_baseline(const ParamSet& weights, const model::ModelConfig& cfg, const Tensor& x,
                                  const Tensor& y_observed) {
  ad::Tape tape;
  BoundParams p = BoundParams::bind(tape, weights, false);
  Var feats = model::features(tape.constant(x), tape.constant(y_observed), p, cfg);
  const model::GaussianHead head = model::baseline_gaussian_head_forward(feats, p);
  GenerationResult r;
  r.mode = Mode::kPrediction;
  for (std::size_t i = 0; i < head.mean.rows(); ++i) {
    r.mean.push_back(head.mean.value()(i, 0));
    r.variance.push_back(std::exp(head.log_var.value()(i, 0)));
  }
  fill_band(r);
  return r;
}

double nrmse(std::span<const double> pred, std::span<const double> targets) {
  if (targets.empty()) throw ContractError("nrmse: no targets");
  if (pred.size() != targets.size()) throw ContractError("nrmse: prediction and target lengths differ");
  const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw ContractError("nrmse: targets have zero range");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += (pred[i] - targets[i]) * (pred[i] - targets[i]);
  return std::sqrt(s / static_cast<double>(pred.size())) / range;
}

double coverage_2sigma(const GenerationResult& r, std::span<const double> targets) {
  if (targets.size() != r.size() || r.lo.size() != r.size() || r.hi.size() != r.size()) {
    throw ContractError("coverage_2sigma: lengths differ");
  }
  if (targets.empty()) throw ContractError("coverage_2sigma: no targets");
  std::size_t inside = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) inside += (targets[i] >= r.lo[i] && targets[i] <= r.hi[i]) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(targets.size());
}

GenerationResult denormalize(const GenerationResult& r, const data::NormalizationRecord& rec) {
  GenerationResult out = r;
  const double range = rec.target_max - rec.target_min;
  const double scale = range > 0.0 ? range : 1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.mean[i] = rec.denormalize_target(r.mean[i]);
    out.lo[i] = rec.denormalize_target(r.lo[i]);
    out.hi[i] = rec.denormalize_target(r.hi[i]);
    out.variance[i] = r.variance[i] * scale * scale;
  }
  return out;
}

void write_sequence_csv(const std::string& path, const GenerationResult& r, std::span<const double> targets) {
  if (targets.size() != r.size()) throw ContractError("write_sequence_csv: lengths differ");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << "t,target,mean,lo,hi\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    f << (i + 1) << ',' << data::format_double(targets[i]) << ',' << data::format_double(r.mean[i]) << ','
      << data::format_double(r.lo[i]) << ',' << data::format_double(r.hi[i]) << '\n';
  }
  if (!f) throw IoError("write failed for " + path);
}

void write_metrics_csv(const std::string& path, const std::vector<MetricRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << "dataset,mode,nrmse,coverage,seed\n";
  for (const auto& m : rows) {
    f << m.dataset << ',' << m.mode << ',' << data::format_double(m.nrmse) << ',' << data::format_double(m.coverage)
      << ',' << m.seed << '\n';
  }
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace agp::eval
