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

#include "agp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "agp/data/csv.hpp"
#include "agp/data/generators.hpp"
#include "agp/errors.hpp"
#include "agp/model/checkpoint.hpp"

namespace agp::cli {
namespace fs = std::filesystem;
namespace {

constexpr std::size_t kMaxFullBatchRows = 5000;
constexpr const char* kCheckpointFile = "checkpoint.agpc";

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed for " + path.string());
}

std::vector<double> column(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

double mean_sigma(const std::vector<eval::GenerationResult>& results) {
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& r : results) {
    for (double v : r.variance) {
      s += std::sqrt(v);
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : 0.0;
}

double pooled_nrmse(const std::vector<eval::GenerationResult>& results, const data::SequenceDataset& ds) {
  std::vector<double> pred, target;
  for (std::size_t i = 0; i < results.size(); ++i) {
    pred.insert(pred.end(), results[i].mean.begin(), results[i].mean.end());
    const auto y = column(ds.targets[i]);
    target.insert(target.end(), y.begin(), y.end());
  }
  return eval::nrmse(pred, target);
}

/// Plot data: one row per step with the input's first channel in original units.
void write_plot_csv(const fs::path& path, const std::vector<std::pair<std::string, const data::SequenceDataset*>>& parts,
                    const std::vector<std::vector<eval::GenerationResult>>& results) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << "region,x,target,mean,lo,hi\n";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& ds = *parts[p].second;
    const auto& rec = *ds.normalization;
    for (std::size_t s = 0; s < ds.size(); ++s) {
      const auto r = eval::denormalize(results[p][s], rec);
      for (std::size_t t = 0; t < r.size(); ++t) {
        f << parts[p].first << ',' << data::format_double(rec.denormalize_input(0, ds.inputs[s](t, 0))) << ','
          << data::format_double(rec.denormalize_target(ds.targets[s](t, 0))) << ',' << data::format_double(r.mean[t])
          << ',' << data::format_double(r.lo[t]) << ',' << data::format_double(r.hi[t]) << '\n';
      }
    }
  }
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ConditioningError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const GenerationError*>(&e)) {
    return kExitNumerical;
  }
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const DataError*>(&e)) return kExitIo;
  return kExitInternal;
}

data::DatasetSplits build_dataset(const ExperimentConfig& cfg) {
  const auto& d = cfg.dataset;
  const std::uint64_t seed = d.seed.value_or(cfg.seed);
  const std::size_t length = cfg.model.L;
  data::DatasetSplits raw;
  if (d.name == "sin") {
    data::SinOptions o;
    o.seed = seed;
    o.length = length;
    if (d.n_points) o.n_points = *d.n_points;
    if (d.noise_sd) o.noise_sd = *d.noise_sd;
    if (o.n_points < 10) throw ConfigError("dataset.n_points must be at least 10");
    raw = data::gen_sin(o);
  } else if (d.name == "suspension") {
    data::SuspensionOptions o;
    o.seed = seed;
    o.length = length;
    if (d.n_steps) o.n_steps = *d.n_steps;
    if (d.noise_sd) o.noise_sd = *d.noise_sd;
    if (d.alpha) o.params.alpha = *d.alpha;
    if (o.n_steps / o.decimation < length) throw ConfigError("dataset.n_steps too small for one window of model.L steps");
    raw = data::gen_suspension(o);
  } else if (d.name == "load") {
    data::LoadOptions o;
    o.seed = seed;
    o.length = length;
    if (d.n_steps) o.n_steps = *d.n_steps;
    if (d.noise_sd) o.noise_sd = *d.noise_sd;
    if (o.n_steps < length) throw ConfigError("dataset.n_steps must be at least model.L");
    raw = data::gen_load(o);
  } else if (d.name == "csv") {
    raw = data::load_csv(d.path, d.input_cols, d.target_col, length);
  } else {
    throw ConfigError("missing required field dataset.name");
  }
  return data::normalize(raw);
}

model::ModelConfig resolved_model(const ExperimentConfig& cfg, const data::DatasetSplits& splits) {
  model::ModelConfig m = cfg.model;
  m.input_dim = splits.train.input_dim();
  m.validate();
  return m;
}

train::TrainConfig resolved_train(const ExperimentConfig& cfg, std::size_t n_sequences) {
  train::TrainConfig t = cfg.train;
  t.seed = cfg.seed;
  if (cfg.t1_auto) t.T1 = train::batches_per_epoch(n_sequences, std::max<std::size_t>(t.batch_size, 1));
  return t;
}

TrainOutcome run_training(const ExperimentConfig& cfg) {
  TrainOutcome out;
  out.splits = build_dataset(cfg);
  const model::ModelConfig mc = resolved_model(cfg, out.splits);
  const train::TrainConfig tc = resolved_train(cfg, out.splits.train.size());
  auto m = model::AttentiveGp::create(mc, cfg.gp, cfg.seed);
  out.result = cfg.trainer == TrainerKind::kBlockwise ? train::blockwise_train(std::move(m), out.splits.train, tc)
                                                      : train::fullbatch_train(std::move(m), out.splits.train, tc);
  return out;
}

EvalOutcome run_eval(const ExperimentConfig& cfg, const model::AttentiveGp& m, const data::DatasetSplits& splits,
                     eval::Mode mode) {
  if (splits.test.empty()) throw ConfigError("the test split is empty; use more data or a shorter model.L");
  const eval::Predictor predictor(m, splits.train);
  EvalOutcome out;
  std::vector<double> pred, target;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < splits.test.size(); ++i) {
    const Tensor& x = splits.test.inputs[i];
    const Tensor& y = splits.test.targets[i];
    std::optional<std::uint64_t> draw;
    if (cfg.sample_seed) draw = *cfg.sample_seed + i;
    auto r = mode == eval::Mode::kPrediction ? predictor.predict(x, y) : predictor.generate(x, draw);
    const auto yv = column(y);
    eval::MetricRow row{cfg.dataset.name + "#" + std::to_string(i + 1), eval::to_string(mode), eval::nrmse(r.mean, yv),
                        eval::coverage_2sigma(r, yv), cfg.seed};
    inside += static_cast<std::size_t>(std::llround(row.coverage * static_cast<double>(yv.size())));
    pred.insert(pred.end(), r.mean.begin(), r.mean.end());
    target.insert(target.end(), yv.begin(), yv.end());
    out.rows.push_back(row);
    out.results.push_back(std::move(r));
  }
  out.summary = {cfg.dataset.name, eval::to_string(mode), eval::nrmse(pred, target),
                 static_cast<double>(inside) / static_cast<double>(target.size()), cfg.seed};
  out.rows.push_back(out.summary);
  return out;
}

SincheckOutcome run_sincheck(const ExperimentConfig& cfg) {
  if (cfg.dataset.name != "sin") throw ConfigError("sincheck requires dataset.name = sin");
  const TrainOutcome trained = run_training(cfg);
  const auto& splits = trained.splits;
  const eval::Predictor gp_head(trained.result.model, splits.train);
  const auto baseline = train::train_gaussian_baseline(trained.result.model.config, splits.train, cfg.baseline_epochs,
                                                       cfg.baseline_lr, cfg.seed);
  SincheckOutcome out;
  out.splits = splits;
  for (const char* model_name : {"attentive_gp", "gaussian_head"}) {
    double sig[2] = {0.0, 0.0};
    int slot = 0;
    for (const auto& [region, ds] : {std::pair{"in_sample", &splits.train}, std::pair{"oos", &splits.test}}) {
      std::vector<eval::GenerationResult> results;
      for (std::size_t i = 0; i < ds->size(); ++i) {
        results.push_back(std::string(model_name) == "attentive_gp"
                              ? gp_head.predict(ds->inputs[i], ds->targets[i])
                              : eval::predict_baseline(baseline.weights, trained.result.model.config, ds->inputs[i],
                                                       ds->targets[i]));
      }
      SincheckRow row{region, model_name, mean_sigma(results), mean_sigma(results), pooled_nrmse(results, *ds)};
      if (std::string(model_name) == "attentive_gp") {
        const double noise = gp_head.posterior().hyperparams().noise();
        auto latent = results;
        for (auto& r : latent)
          for (double& v : r.variance) v = std::max(v - noise, 0.0);
        row.mean_latent_sigma = mean_sigma(latent);
      }
      sig[slot++] = row.mean_sigma;
      out.rows.push_back(row);
      (std::string(model_name) == "attentive_gp" ? out.gp_results : out.baseline_results).push_back(std::move(results));
    }
    (std::string(model_name) == "attentive_gp" ? out.gp_ratio : out.baseline_ratio) = sig[1] / sig[0];
  }
  return out;
}

std::size_t rounds_to_reach(const train::TrainTrace& trace, double target) {
  const double threshold = target + 0.05 * std::abs(target);
  for (const auto& r : trace.rounds) {
    if (r.loss <= threshold) return r.round;
  }
  return trace.rounds.size() + 1;
}

CompareOutcome run_compare(const ExperimentConfig& cfg) {
  const data::DatasetSplits splits = build_dataset(cfg);
  const std::size_t rows = splits.train.size() * splits.train.length();
  if (rows > kMaxFullBatchRows) {
    throw ConfigError("compare-trainers: " + std::to_string(rows) + " GP rows exceed the full-batch limit of " +
                      std::to_string(kMaxFullBatchRows) + "; reduce the dataset size or set gp.mode = kiss");
  }
  const model::ModelConfig mc = resolved_model(cfg, splits);
  CompareOutcome out;
  for (std::size_t s = 0; s < cfg.compare_seeds; ++s) {
    ExperimentConfig run = cfg;
    run.seed = cfg.seed + s;
    train::TrainConfig tc = resolved_train(run, splits.train.size());
    tc.T1 = train::batches_per_epoch(splits.train.size(), tc.batch_size);
    tc.T2 = 1;
    const auto init = model::AttentiveGp::create(mc, cfg.gp, run.seed);
    auto block = train::blockwise_train(init, splits.train, tc);
    auto full = train::fullbatch_train(init, splits.train, tc);
    const double target = full.trace.final_loss();
    out.seeds.push_back(run.seed);
    out.final_blockwise.push_back(block.trace.final_loss());
    out.final_fullbatch.push_back(target);
    out.reach_blockwise.push_back(rounds_to_reach(block.trace, target));
    out.reach_fullbatch.push_back(rounds_to_reach(full.trace, target));
    out.blockwise.push_back(std::move(block.trace));
    out.fullbatch.push_back(std::move(full.trace));
  }
  return out;
}

void cmd_train(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  ensure_dir(dir);
  const TrainOutcome t = run_training(cfg);
  nlohmann::json meta;
  meta["dataset"] = cfg.dataset.name;
  meta["seed"] = cfg.seed;
  meta["trainer"] = to_string(cfg.trainer);
  meta["normalization"] = t.splits.train.normalization->to_json();
  model::save_checkpoint((dir / kCheckpointFile).string(), t.result.model.to_checkpoint(meta));
  t.result.trace.write_csv((dir / "trace.csv").string());
  ExperimentConfig resolved = cfg;
  resolved.model = t.result.model.config;
  write_text(dir / "config.resolved", resolved.to_text());
  std::printf("trained %s on %s: %zu rounds, loss %.6g -> %.6g\n", to_string(cfg.trainer).c_str(),
              cfg.dataset.name.c_str(), t.result.trace.rounds.size(), t.result.trace.initial_loss,
              t.result.trace.final_loss());
}

void cmd_eval(const ExperimentConfig& cfg, const std::string& checkpoint, eval::Mode mode) {
  const fs::path dir(cfg.out_dir);
  const model::Checkpoint ck = model::load_checkpoint(checkpoint);
  const model::AttentiveGp m = model::AttentiveGp::from_checkpoint(ck);
  const data::DatasetSplits splits = build_dataset(cfg);
  if (!(m.config == resolved_model(cfg, splits))) {
    throw ConfigError("checkpoint " + checkpoint + " was trained with a different model configuration");
  }
  if (!ck.meta.contains("normalization") ||
      !(data::NormalizationRecord::from_json(ck.meta["normalization"]) == *splits.train.normalization)) {
    throw ConfigError("checkpoint " + checkpoint + " was trained on different data than the config describes");
  }
  const EvalOutcome ev = run_eval(cfg, m, splits, mode);
  const fs::path seq_dir = dir / ("eval_" + eval::to_string(mode));
  ensure_dir(seq_dir);
  const auto& rec = *splits.test.normalization;
  for (std::size_t i = 0; i < ev.results.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "seq_%04zu.csv", i + 1);
    const auto y = data::denormalize_targets(rec, column(splits.test.targets[i]));
    eval::write_sequence_csv((seq_dir / name).string(), eval::denormalize(ev.results[i], rec), y);
  }
  eval::write_metrics_csv((dir / ("metrics_" + eval::to_string(mode) + ".csv")).string(), ev.rows);
  std::printf("%s on %s: nrmse %.6g, coverage %.4g over %zu sequences\n", eval::to_string(mode).c_str(),
              cfg.dataset.name.c_str(), ev.summary.nrmse, ev.summary.coverage, ev.results.size());
}

void cmd_sincheck(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  ensure_dir(dir);
  const SincheckOutcome s = run_sincheck(cfg);
  std::string report = "region,model,mean_sigma,nrmse\n";
  for (const auto& r : s.rows) {
    report += r.region + "," + r.model + "," + data::format_double(r.mean_sigma) + "," + data::format_double(r.nrmse) + "\n";
  }
  write_text(dir / "sincheck_report.csv", report);

  const std::vector<std::pair<std::string, const data::SequenceDataset*>> parts = {{"in_sample", &s.splits.train},
                                                                                   {"oos", &s.splits.test}};
  write_plot_csv(dir / "sincheck_attentive_gp.csv", parts, s.gp_results);
  write_plot_csv(dir / "sincheck_gaussian_head.csv", parts, s.baseline_results);
  std::printf("OOS / in-sample mean sigma: attentive_gp %.4g, gaussian_head %.4g\n", s.gp_ratio, s.baseline_ratio);
}

void cmd_compare_trainers(const ExperimentConfig& cfg) {
  const fs::path dir = fs::path(cfg.out_dir) / "compare";
  ensure_dir(dir);
  const CompareOutcome c = run_compare(cfg);
  std::string summary = "trainer,seed,final_loss,rounds_to_fullbatch_final\n";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    c.blockwise[i].write_csv((dir / ("blockwise_seed" + std::to_string(c.seeds[i]) + ".csv")).string());
    summary += "blockwise," + std::to_string(c.seeds[i]) + "," + data::format_double(c.final_blockwise[i]) + "," +
               std::to_string(c.reach_blockwise[i]) + "\n";
  }
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    c.fullbatch[i].write_csv((dir / ("fullbatch_seed" + std::to_string(c.seeds[i]) + ".csv")).string());
    summary += "fullbatch," + std::to_string(c.seeds[i]) + "," + data::format_double(c.final_fullbatch[i]) + "," +
               std::to_string(c.reach_fullbatch[i]) + "\n";
  }
  write_text(dir / "summary.csv", summary);

  std::string curves = "round,blockwise,fullbatch\n";
  const std::size_t rounds = c.blockwise.empty() ? 0 : c.blockwise[0].rounds.size();
  for (std::size_t k = 0; k < rounds; ++k) {
    double b = 0.0, f = 0.0;
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
      b += c.blockwise[i].rounds[k].loss;
      f += c.fullbatch[i].rounds[k].loss;
    }
    const double n = static_cast<double>(c.seeds.size());
    curves += std::to_string(k + 1) + "," + data::format_double(b / n) + "," + data::format_double(f / n) + "\n";
  }
  write_text(dir / "mean_curves.csv", curves);

  double mb = 0.0, mf = 0.0;
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    mb += c.final_blockwise[i];
    mf += c.final_fullbatch[i];
  }
  mb /= static_cast<double>(c.seeds.size());
  mf /= static_cast<double>(c.seeds.size());
  std::printf("mean final loss: blockwise %.6g, fullbatch %.6g, relative gap %.4g\n", mb, mf,
              std::abs(mb - mf) / std::abs(mf));
}

int run_command(const CommandLine& cl) {
  try {
    ExperimentConfig cfg = load_config(cl.config_path);
    if (cl.seed) cfg.seed = *cl.seed;
    if (cl.out_dir) cfg.out_dir = *cl.out_dir;
    const std::string ckpt = cl.checkpoint.empty() ? (fs::path(cfg.out_dir) / kCheckpointFile).string() : cl.checkpoint;
    if (cl.command == "train") {
      cmd_train(cfg);
    } else if (cl.command == "eval") {
      cmd_eval(cfg, ckpt, cfg.eval_mode);
    } else if (cl.command == "generate") {
      cmd_eval(cfg, ckpt, eval::Mode::kGeneration);
    } else if (cl.command == "sincheck") {
      cmd_sincheck(cfg);
    } else if (cl.command == "compare-trainers") {
      cmd_compare_trainers(cfg);
    } else {
      throw ConfigError("unknown command '" + cl.command + "'");
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "agp %s: %s\n", cl.command.c_str(), e.what());
    return exit_code_for(e);
  }
}

}  // namespace agp::cli
