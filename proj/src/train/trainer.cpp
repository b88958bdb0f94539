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

#include "agp/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "agp/errors.hpp"
#include "agp/model/baseline.hpp"
#include "agp/model/network.hpp"

namespace agp::train {
namespace {

using model::AttentiveGp;
using model::LossEval;

class Stepper {
 public:
  Stepper(const TrainConfig& cfg) : cfg_(cfg) {}

  void step(ParamSet& params, const ParamSet& grad, AdamState& state, double lr) const {
    if (lr == 0.0) return;
    if (cfg_.optimizer == Optimizer::kAdam) {
      adam_step(params, grad, state, lr, cfg_.adam);
    } else {
      sgd_step(params, grad, lr);
    }
  }

 private:
  const TrainConfig& cfg_;
};

/// Epoch-wise shuffled sequence indices, handed out batch by batch.
class BatchSampler {
 public:
  BatchSampler(std::size_t n, std::size_t batch, std::uint64_t seed) : order_(n), batch_(batch), rng_(seed) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    pos_ = n;  // forces a shuffle on first use
  }

  std::vector<std::size_t> next() {
    if (pos_ >= order_.size()) {
      std::shuffle(order_.begin(), order_.end(), rng_);
      pos_ = 0;
    }
    const std::size_t end = std::min(order_.size(), pos_ + batch_);
    std::vector<std::size_t> out(order_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                 order_.begin() + static_cast<std::ptrdiff_t>(end));
    pos_ = end;
    return out;
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_;
  std::size_t pos_;
  std::mt19937_64 rng_;
};

std::vector<double> joint(const ParamSet& a, const ParamSet& b) {
  std::vector<double> out = a.flatten();
  const auto tail = b.flatten();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Full-batch evaluation after a round plus the gradient-difference ratio
/// against the previous evaluation.
struct Checkpointed {
  std::vector<double> params;
  std::vector<double> grads;
};

void finish_round(RoundRecord& rec, const LossEval& eval, const AttentiveGp& m, Checkpointed& prev) {
  rec.loss = eval.loss;
  rec.grad_w_norm = std::sqrt(eval.grad_w.squared_norm());
  rec.grad_theta_norm = std::sqrt(eval.grad_theta.squared_norm());
  Checkpointed cur{joint(m.weights, m.theta), joint(eval.grad_w, eval.grad_theta)};
  const double dp = distance(cur.params, prev.params);
  rec.lipschitz_ratio = dp > 0.0 ? distance(cur.grads, prev.grads) / dp : 0.0;
  prev = std::move(cur);
}

template <typename Body>
void guarded_round(std::size_t k, Body&& body) {
  try {
    body();
  } catch (const ConditioningError& e) {
    throw ConditioningError("round " + std::to_string(k) + ": " + e.what());
  }
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(Optimizer opt) { return opt == Optimizer::kAdam ? "adam" : "sgd"; }

Optimizer parse_optimizer(const std::string& text) {
  if (text == "adam") return Optimizer::kAdam;
  if (text == "sgd") return Optimizer::kSgd;
  throw ConfigError("train.optimizer must be adam or sgd, got '" + text + "'");
}

void TrainConfig::validate(std::size_t n_sequences) const {
  if (T1 < 1) throw ConfigError("train.T1 must be at least 1");
  if (T2 < 1) throw ConfigError("train.T2 must be at least 1");
  if (!(lr_w >= 0.0) || !std::isfinite(lr_w)) throw ConfigError("train.lr_w must be non-negative");
  if (!(lr_theta >= 0.0) || !std::isfinite(lr_theta)) throw ConfigError("train.lr_theta must be non-negative");
  if (batch_size < 1) throw ConfigError("train.batch_size must be at least 1");
  if (batch_size > n_sequences) {
    throw ConfigError("train.batch_size (" + std::to_string(batch_size) + ") exceeds the number of training sequences (" +
                      std::to_string(n_sequences) + ")");
  }
  if (epochs < 1) throw ConfigError("train.epochs must be at least 1");
}

std::size_t batches_per_epoch(std::size_t n, std::size_t batch_size) {
  if (batch_size == 0) throw ContractError("batch_size must be positive");
  return (n + batch_size - 1) / batch_size;
}

TrainResult blockwise_train(AttentiveGp m, const data::SequenceDataset& train, const TrainConfig& cfg) {
  train.validate();
  cfg.validate(train.size());
  const Stepper stepper(cfg);
  BatchSampler sampler(train.size(), cfg.batch_size, cfg.seed);
  AdamState adam_w, adam_theta;
  const ScheduleRule rule_w{cfg.schedule, cfg.lr_w};
  const ScheduleRule rule_theta{cfg.schedule, cfg.lr_theta};
  const Tensor all_targets = train.stacked_targets();
  const double n = static_cast<double>(train.size());

  TrainResult out;
  Checkpointed prev;
  guarded_round(0, [&] {
    const LossEval e0 = model::full_objective(m, train, true, true);
    out.trace.initial_loss = e0.loss;
    prev = {joint(m.weights, m.theta), joint(e0.grad_w, e0.grad_theta)};
  });

  for (std::size_t k = 1; k <= cfg.epochs; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    RoundRecord rec;
    rec.round = k;
    rec.lr_w = rule_w.at(k);
    rec.lr_theta = k > cfg.warmup ? rule_theta.at(k) : 0.0;
    guarded_round(k, [&] {
      for (std::size_t tau = 0; tau < cfg.T1; ++tau) {
        const auto batch = sampler.next();
        const LossEval e = model::objective(m, train, batch, true, false);
        if (cfg.observer) cfg.observer(Block::kW, k, e.grad_w, m);
        // Batch gradients scaled to full-batch units for the descent monitor.
        const double scale = n / static_cast<double>(batch.size());
        const double g2 = scale * scale * e.grad_w.squared_norm();
        rec.sum_lr_w_grad_sq += rec.lr_w * g2;
        rec.sum_lr_w_sq += rec.lr_w * rec.lr_w;
        rec.max_stoch_grad_sq = std::max(rec.max_stoch_grad_sq, g2);
        stepper.step(m.weights, e.grad_w, adam_w, rec.lr_w);
      }
      if (rec.lr_theta > 0.0) {
        const Tensor feats = model::compute_features(m.weights, m.config, train.inputs, train.targets);
        for (std::size_t tau = 0; tau < cfg.T2; ++tau) {
          const LossEval e = model::theta_objective(feats, all_targets, m.theta, m.gp, true);
          if (cfg.observer) cfg.observer(Block::kTheta, k, e.grad_theta, m);
          rec.sum_lr_theta_grad_sq += rec.lr_theta * e.grad_theta.squared_norm();
          stepper.step(m.theta, e.grad_theta, adam_theta, rec.lr_theta);
        }
      }
      finish_round(rec, model::full_objective(m, train, true, true), m, prev);
    });
    rec.seconds = cfg.record_time ? elapsed(t0) : 0.0;
    out.trace.rounds.push_back(rec);
  }
  out.model = std::move(m);
  return out;
}

TrainResult fullbatch_train(AttentiveGp m, const data::SequenceDataset& train, const TrainConfig& cfg) {
  train.validate();
  if (cfg.epochs < 1) throw ConfigError("train.epochs must be at least 1");
  if (!(cfg.lr_w >= 0.0) || !(cfg.lr_theta >= 0.0)) throw ConfigError("learning rates must be non-negative");
  const Stepper stepper(cfg);
  AdamState adam_w, adam_theta;
  const ScheduleRule rule_w{cfg.schedule, cfg.lr_w};
  const ScheduleRule rule_theta{cfg.schedule, cfg.lr_theta};

  TrainResult out;
  LossEval cur;
  Checkpointed prev;
  guarded_round(0, [&] {
    cur = model::full_objective(m, train, true, true);
    out.trace.initial_loss = cur.loss;
    prev = {joint(m.weights, m.theta), joint(cur.grad_w, cur.grad_theta)};
  });

  for (std::size_t k = 1; k <= cfg.epochs; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    RoundRecord rec;
    rec.round = k;
    rec.lr_w = rule_w.at(k);
    rec.lr_theta = k > cfg.warmup ? rule_theta.at(k) : 0.0;
    guarded_round(k, [&] {
      if (cfg.observer) {
        cfg.observer(Block::kW, k, cur.grad_w, m);
        if (rec.lr_theta > 0.0) cfg.observer(Block::kTheta, k, cur.grad_theta, m);
      }
      const double gw2 = cur.grad_w.squared_norm();
      rec.sum_lr_w_grad_sq = rec.lr_w * gw2;
      rec.sum_lr_w_sq = rec.lr_w * rec.lr_w;
      rec.max_stoch_grad_sq = gw2;
      stepper.step(m.weights, cur.grad_w, adam_w, rec.lr_w);
      if (rec.lr_theta > 0.0) {
        rec.sum_lr_theta_grad_sq = rec.lr_theta * cur.grad_theta.squared_norm();
        stepper.step(m.theta, cur.grad_theta, adam_theta, rec.lr_theta);
      }
      cur = model::full_objective(m, train, true, true);
      finish_round(rec, cur, m, prev);
    });
    rec.seconds = cfg.record_time ? elapsed(t0) : 0.0;
    out.trace.rounds.push_back(rec);
  }
  out.model = std::move(m);
  return out;
}

BaselineResult train_gaussian_baseline(const model::ModelConfig& cfg, const data::SequenceDataset& train,
                                       std::size_t epochs, double lr, std::uint64_t seed) {
  train.validate();
  BaselineResult out;
  out.weights = model::init_params(cfg, seed).merged(model::init_baseline_head(cfg, seed + 1));
  std::vector<std::size_t> all(train.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Tensor targets = train.stacked_targets();
  auto evaluate = [&](ParamSet* grad) {
    ad::Tape tape;
    BoundParams p = BoundParams::bind(tape, out.weights, grad != nullptr);
    Var feats = model::batch_features(tape, p, cfg, train.inputs, train.targets, all);
    Var loss = model::gaussian_nll(model::baseline_gaussian_head_forward(feats, p), tape.constant(targets));
    if (grad) {
      tape.backward(loss);
      *grad = p.gradients(tape);
    }
    return loss.value().item();
  };
  AdamState state;
  ParamSet grad;
  out.trace.initial_loss = evaluate(&grad);
  for (std::size_t k = 1; k <= epochs; ++k) {
    adam_step(out.weights, grad, state, lr);
    RoundRecord rec;
    rec.round = k;
    rec.lr_w = lr;
    rec.loss = evaluate(&grad);
    rec.grad_w_norm = std::sqrt(grad.squared_norm());
    out.trace.rounds.push_back(rec);
  }
  return out;
}

}  // namespace agp::train
