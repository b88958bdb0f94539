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

#include "agp/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "agp/data/csv.hpp"
#include "agp/errors.hpp"

namespace agp::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_uint(const std::string& v, const std::string& key) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + " expects a non-negative integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& v, const std::string& key) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key + " expects a number, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + " expects true or false, got '" + v + "'");
}

std::vector<std::string> to_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& value, const std::string& key)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto model_field = [&t](const char* key, std::size_t model::ModelConfig::*field) {
      t[key] = [field](ExperimentConfig& c, const std::string& v, const std::string& k) { c.model.*field = to_uint(v, k); };
    };
    model_field("model.input_dim", &model::ModelConfig::input_dim);
    model_field("model.d_x", &model::ModelConfig::d_x);
    model_field("model.d_h", &model::ModelConfig::d_h);
    model_field("model.n_layers", &model::ModelConfig::n_layers);
    model_field("model.n_heads", &model::ModelConfig::n_heads);
    model_field("model.d_k", &model::ModelConfig::d_k);
    model_field("model.d_c", &model::ModelConfig::d_c);
    model_field("model.F", &model::ModelConfig::F);
    model_field("model.L", &model::ModelConfig::L);

    t["dataset.name"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) {
      if (v != "sin" && v != "suspension" && v != "load" && v != "csv") {
        throw ConfigError(k + " must be sin, suspension, load or csv, got '" + v + "'");
      }
      c.dataset.name = v;
    };
    t["dataset.seed"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.dataset.seed = to_uint(v, k); };
    t["dataset.n_points"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.dataset.n_points = to_uint(v, k); };
    t["dataset.n_steps"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.dataset.n_steps = to_uint(v, k); };
    t["dataset.noise_sd"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.dataset.noise_sd = to_double(v, k); };
    t["dataset.alpha"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.dataset.alpha = to_double(v, k); };
    t["dataset.path"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.dataset.path = v; };
    t["dataset.input_cols"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.dataset.input_cols = to_list(v); };
    t["dataset.target_col"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.dataset.target_col = v; };

    t["train.trainer"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) {
      if (v == "blockwise") {
        c.trainer = TrainerKind::kBlockwise;
      } else if (v == "fullbatch") {
        c.trainer = TrainerKind::kFullbatch;
      } else {
        throw ConfigError(k + " must be blockwise or fullbatch, got '" + v + "'");
      }
    };
    t["train.T1"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) {
      c.t1_auto = v == "auto";
      if (!c.t1_auto) c.train.T1 = to_uint(v, k);
    };
    t["train.T2"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.T2 = to_uint(v, k); };
    t["train.lr_w"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.lr_w = to_double(v, k); };
    t["train.lr_theta"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.lr_theta = to_double(v, k); };
    t["train.batch_size"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.batch_size = to_uint(v, k); };
    t["train.epochs"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.epochs = to_uint(v, k); };
    t["train.warmup"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.warmup = to_uint(v, k); };
    t["train.optimizer"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.train.optimizer = train::parse_optimizer(v); };
    t["train.schedule"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.train.schedule = train::parse_schedule(v); };
    t["train.record_time"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.record_time = to_bool(v, k); };
    t["train.adam_beta1"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.adam.beta1 = to_double(v, k); };
    t["train.adam_beta2"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.adam.beta2 = to_double(v, k); };
    t["train.adam_eps"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.train.adam.eps = to_double(v, k); };

    t["gp.mode"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.gp.mode = gp::parse_gp_mode(v); };
    t["gp.inducing"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.gp.inducing = to_uint(v, k); };
    t["eval.mode"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.eval_mode = eval::parse_mode(v); };
    t["eval.sample_seed"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.sample_seed = to_uint(v, k); };
    t["compare.seeds"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.compare_seeds = to_uint(v, k); };
    t["baseline.epochs"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.baseline_epochs = to_uint(v, k); };
    t["baseline.lr"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.baseline_lr = to_double(v, k); };
    t["out"] = [](ExperimentConfig& c, const std::string& v, const std::string&) { c.out_dir = v; };
    t["seed"] = [](ExperimentConfig& c, const std::string& v, const std::string& k) { c.seed = to_uint(v, k); };
    return t;
  }();
  return table;
}

}  // namespace

std::string to_string(TrainerKind kind) { return kind == TrainerKind::kBlockwise ? "blockwise" : "fullbatch"; }

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + key + " has no value");
    try {
      it->second(cfg, value, key);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (cfg.dataset.name.empty()) throw ConfigError(source + ": missing required field dataset.name");
  if (cfg.dataset.name == "csv") {
    if (cfg.dataset.path.empty()) throw ConfigError(source + ": missing required field dataset.path");
    if (cfg.dataset.input_cols.empty()) throw ConfigError(source + ": missing required field dataset.input_cols");
    if (cfg.dataset.target_col.empty()) throw ConfigError(source + ": missing required field dataset.target_col");
  }
  try {
    cfg.model.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream o;
  auto num = [](double v) { return data::format_double(v); };
  o << "seed = " << seed << "\n";
  o << "out = " << out_dir << "\n";
  o << "dataset.name = " << dataset.name << "\n";
  if (dataset.seed) o << "dataset.seed = " << *dataset.seed << "\n";
  if (dataset.n_points) o << "dataset.n_points = " << *dataset.n_points << "\n";
  if (dataset.n_steps) o << "dataset.n_steps = " << *dataset.n_steps << "\n";
  if (dataset.noise_sd) o << "dataset.noise_sd = " << num(*dataset.noise_sd) << "\n";
  if (dataset.alpha) o << "dataset.alpha = " << num(*dataset.alpha) << "\n";
  if (!dataset.path.empty()) o << "dataset.path = " << dataset.path << "\n";
  if (!dataset.input_cols.empty()) {
    o << "dataset.input_cols = ";
    for (std::size_t i = 0; i < dataset.input_cols.size(); ++i) o << (i ? "," : "") << dataset.input_cols[i];
    o << "\n";
  }
  if (!dataset.target_col.empty()) o << "dataset.target_col = " << dataset.target_col << "\n";
  o << "model.input_dim = " << model.input_dim << "\n"
    << "model.d_x = " << model.d_x << "\n"
    << "model.d_h = " << model.d_h << "\n"
    << "model.n_layers = " << model.n_layers << "\n"
    << "model.n_heads = " << model.n_heads << "\n"
    << "model.d_k = " << model.d_k << "\n"
    << "model.d_c = " << model.d_c << "\n"
    << "model.F = " << model.F << "\n"
    << "model.L = " << model.L << "\n";
  o << "train.trainer = " << to_string(trainer) << "\n";
  o << "train.T1 = " << (t1_auto ? std::string("auto") : std::to_string(train.T1)) << "\n";
  o << "train.T2 = " << train.T2 << "\n"
    << "train.lr_w = " << num(train.lr_w) << "\n"
    << "train.lr_theta = " << num(train.lr_theta) << "\n"
    << "train.batch_size = " << train.batch_size << "\n"
    << "train.epochs = " << train.epochs << "\n"
    << "train.warmup = " << train.warmup << "\n"
    << "train.optimizer = " << train::to_string(train.optimizer) << "\n"
    << "train.schedule = " << train::to_string(train.schedule) << "\n"
    << "train.record_time = " << (train.record_time ? "true" : "false") << "\n"
    << "train.adam_beta1 = " << num(train.adam.beta1) << "\n"
    << "train.adam_beta2 = " << num(train.adam.beta2) << "\n"
    << "train.adam_eps = " << num(train.adam.eps) << "\n";
  o << "gp.mode = " << gp::to_string(gp.mode) << "\n"
    << "gp.inducing = " << gp.inducing << "\n";
  o << "eval.mode = " << eval::to_string(eval_mode) << "\n";
  if (sample_seed) o << "eval.sample_seed = " << *sample_seed << "\n";
  o << "compare.seeds = " << compare_seeds << "\n";
  o << "baseline.epochs = " << baseline_epochs << "\n"
    << "baseline.lr = " << num(baseline_lr) << "\n";
  return o.str();
}

}  // namespace agp::cli
