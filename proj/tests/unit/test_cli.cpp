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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "agp/cli/commands.hpp"
#include "agp/cli/config.hpp"
#include "agp/errors.hpp"

using namespace agp;
using namespace agp::cli;
namespace fs = std::filesystem;

namespace {

const char* kTiny = R"(# tiny sin run
seed = 4
dataset.name = sin
dataset.n_points = 48
model.d_x = 6
model.d_h = 6
model.d_k = 3
model.d_c = 6
model.L = 4
train.batch_size = 4
train.epochs = 3
train.warmup = 1
baseline.epochs = 3
)";

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("agp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& body, const std::string& name = "run.conf") {
  std::ofstream(dir / name) << body;
  return (dir / name).string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

int run(const std::string& command, const std::string& config, const fs::path& out, const std::string& ckpt = {}) {
  return run_command({command, config, std::nullopt, out.string(), ckpt});
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse_config(kTiny);
  CHECK(c.seed == 4);
  CHECK(c.dataset.name == "sin");
  CHECK(c.dataset.n_points == 48);
  CHECK(c.model.L == 4);
  CHECK(c.train.batch_size == 4);
  CHECK(c.t1_auto);
  CHECK(c.trainer == TrainerKind::kBlockwise);
  CHECK(c.gp.mode == gp::GpMode::kExact);

  const ExperimentConfig again = parse_config(c.to_text());
  CHECK(again.to_text() == c.to_text());
  CHECK(again.model == c.model);

  const auto k = parse_config("dataset.name = load\ngp.mode = kiss\ngp.inducing = 81\ntrain.T1 = 7\ntrain.trainer = fullbatch\n");
  CHECK(k.gp.mode == gp::GpMode::kKiss);
  CHECK(k.gp.inducing == 81);
  CHECK_FALSE(k.t1_auto);
  CHECK(k.train.T1 == 7);
  CHECK(k.trainer == TrainerKind::kFullbatch);

  const auto csv = parse_config("dataset.name = csv\ndataset.path = a.csv\ndataset.input_cols = u, v\ndataset.target_col = y\n");
  CHECK(csv.dataset.input_cols == std::vector<std::string>{"u", "v"});
}

TEST_CASE("config errors carry the source line") {
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = sin\nmodel.dx = 3\n", "f.conf"), "f.conf:2: unknown key 'model.dx'",
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = sin\n\nseed = 1\nseed = 2\n", "f.conf"),
                       "f.conf:4: duplicate key 'seed'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name sin\n", "f.conf"), doctest::Contains("f.conf:1:"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = sin\nmodel.L = -1\n", "f.conf"),
                       doctest::Contains("f.conf:2: model.L"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = sin\ntrain.lr_w =\n", "f.conf"), doctest::Contains("f.conf:2:"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("seed = 3\n", "f.conf"), doctest::Contains("dataset.name"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = csv\ndataset.path = a.csv\n"), doctest::Contains("dataset.input_cols"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("dataset.name = sin\nmodel.n_heads = 0\n"), doctest::Contains("n_heads"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/agp.conf"), IoError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x")) == kExitConfig);
  CHECK(exit_code_for(ConditioningError("x")) == kExitNumerical);
  CHECK(exit_code_for(DomainError("x")) == kExitNumerical);
  CHECK(exit_code_for(GenerationError("x")) == kExitNumerical);
  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(DataError("x")) == kExitIo);
  CHECK(exit_code_for(std::runtime_error("x")) == kExitInternal);

  const auto dir = scratch("exit");
  CHECK(run("train", write_config(dir, "seed = 1\nmodel.L = 4\n"), dir / "out") == kExitConfig);
  CHECK(run("train", (dir / "absent.conf").string(), dir / "out") == kExitIo);
  CHECK(run("dance", write_config(dir, kTiny, "ok.conf"), dir / "out") == kExitConfig);
  CHECK(run("sincheck", write_config(dir, "dataset.name = load\n", "load.conf"), dir / "out") == kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("train writes identical artifacts on rerun") {
  const auto dir = scratch("train");
  const std::string cfg = write_config(dir, kTiny);
  REQUIRE(run("train", cfg, dir / "a") == kExitOk);
  const char* names[] = {"trace.csv", "checkpoint.agpc", "config.resolved"};
  std::vector<std::string> first;
  for (const char* name : names) first.push_back(slurp(dir / "a" / name));
  REQUIRE(run("train", cfg, dir / "a") == kExitOk);
  for (std::size_t i = 0; i < 3; ++i) CHECK(slurp(dir / "a" / names[i]) == first[i]);
  // Another output directory: only the recorded output path differs.
  REQUIRE(run("train", cfg, dir / "b") == kExitOk);
  CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "b" / "trace.csv"));
  CHECK(slurp(dir / "a" / "checkpoint.agpc") == slurp(dir / "b" / "checkpoint.agpc"));
  CHECK(line_count(dir / "a" / "trace.csv") == 4);
  // The resolved snapshot reproduces the run by itself.
  REQUIRE(run("train", (dir / "a" / "config.resolved").string(), dir / "c") == kExitOk);
  CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "c" / "trace.csv"));
  // A different seed changes the trace.
  REQUIRE(run_command({"train", cfg, 9, (dir / "d").string(), {}}) == kExitOk);
  CHECK(slurp(dir / "a" / "trace.csv") != slurp(dir / "d" / "trace.csv"));
  fs::remove_all(dir);
}

TEST_CASE("eval and generate exports") {
  const auto dir = scratch("eval");
  const std::string cfg = write_config(dir, kTiny);
  REQUIRE(run("train", cfg, dir) == kExitOk);
  REQUIRE(run("eval", cfg, dir) == kExitOk);
  REQUIRE(run("generate", cfg, dir) == kExitOk);

  const ExperimentConfig parsed = parse_config(kTiny);
  const auto splits = build_dataset(parsed);
  const std::size_t n_test = splits.test.size();
  REQUIRE(n_test > 0);
  CHECK(line_count(dir / "metrics_prediction.csv") == 1 + n_test + 1);
  CHECK(line_count(dir / "metrics_generation.csv") == 1 + n_test + 1);
  CHECK(line_count(dir / "eval_prediction" / "seq_0001.csv") == 1 + parsed.model.L);
  CHECK(fs::exists(dir / "eval_generation" / "seq_0001.csv"));

  // Exported targets are back in raw units.
  const auto raw = build_dataset(parsed).test.targets[0];
  std::ifstream in(dir / "eval_prediction" / "seq_0001.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  const double first = std::stod(row.substr(row.find(',') + 1));
  const auto& rec = *splits.test.normalization;
  CHECK(first == doctest::Approx(rec.denormalize_target(raw(0, 0))).epsilon(1e-12));

  // Same checkpoint, different architecture: schema mismatch.
  std::string other = kTiny;
  other.replace(other.find("model.d_x = 6"), 13, "model.d_x = 8");
  CHECK(run("eval", write_config(dir, other, "other.conf"), dir, (dir / "checkpoint.agpc").string()) == kExitConfig);
  // Different data under the same architecture.
  std::string moved = kTiny;
  moved.replace(moved.find("dataset.n_points = 48"), 21, "dataset.n_points = 64");
  CHECK(run("eval", write_config(dir, moved, "moved.conf"), dir, (dir / "checkpoint.agpc").string()) == kExitConfig);
  CHECK(run("eval", cfg, dir, (dir / "missing.agpc").string()) == kExitIo);
  fs::remove_all(dir);
}

TEST_CASE("sampled generation is seeded") {
  const auto dir = scratch("sample");
  const std::string cfg = write_config(dir, kTiny);
  REQUIRE(run("train", cfg, dir) == kExitOk);
  REQUIRE(run("generate", cfg, dir / "mean", (dir / "checkpoint.agpc").string()) == kExitOk);
  const std::string sampled = write_config(dir, std::string(kTiny) + "eval.sample_seed = 11\n", "sampled.conf");
  REQUIRE(run("generate", sampled, dir / "s1", (dir / "checkpoint.agpc").string()) == kExitOk);
  REQUIRE(run("generate", sampled, dir / "s2", (dir / "checkpoint.agpc").string()) == kExitOk);
  const auto seq = fs::path("eval_generation") / "seq_0001.csv";
  CHECK(slurp(dir / "s1" / seq) == slurp(dir / "s2" / seq));
  CHECK(slurp(dir / "s1" / seq) != slurp(dir / "mean" / seq));
  CHECK(parse_config(slurp(dir / "sampled.conf")).to_text().find("eval.sample_seed = 11") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sincheck report schema") {
  const auto dir = scratch("sincheck");
  REQUIRE(run("sincheck", write_config(dir, kTiny), dir) == kExitOk);
  std::ifstream in(dir / "sincheck_report.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "region,model,mean_sigma,nrmse");
  CHECK(line_count(dir / "sincheck_report.csv") == 5);
  CHECK(fs::exists(dir / "sincheck_attentive_gp.csv"));
  CHECK(fs::exists(dir / "sincheck_gaussian_head.csv"));
  fs::remove_all(dir);
}

TEST_CASE("trainer comparison") {
  const auto dir = scratch("compare");
  std::string body = kTiny;
  body += "compare.seeds = 2\n";
  REQUIRE(run("compare-trainers", write_config(dir, body), dir) == kExitOk);
  CHECK(line_count(dir / "compare" / "summary.csv") == 1 + 2 * 2);
  CHECK(line_count(dir / "compare" / "mean_curves.csv") == 1 + 3);
  CHECK(fs::exists(dir / "compare" / "blockwise_seed5.csv"));
  CHECK(fs::exists(dir / "compare" / "fullbatch_seed4.csv"));

  train::TrainTrace t;
  t.initial_loss = 10.0;
  for (double l : {8.0, 5.0, 4.1, 4.0}) t.rounds.push_back({.round = t.rounds.size() + 1, .loss = l});
  CHECK(rounds_to_reach(t, 4.0) == 3);
  CHECK(rounds_to_reach(t, -4.0) == 5);

  std::string big = kTiny;
  big.replace(big.find("dataset.n_points = 48"), 21, "dataset.n_points = 9000");
  CHECK_THROWS_WITH_AS(run_compare(parse_config(big)), doctest::Contains("kiss"), ConfigError);
  fs::remove_all(dir);
}
