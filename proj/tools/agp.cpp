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

// Experiment driver: agp train|eval|generate|sincheck|compare-trainers
//   --config PATH [--seed N] [--out DIR] [--checkpoint PATH]

#include <CLI11.hpp>

#include "agp/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Attention encoder-decoder with a Gaussian-process output layer"};
  app.require_subcommand(1);

  agp::cli::CommandLine cl;
  std::uint64_t seed = 0;
  std::string out;

  const std::pair<const char*, const char*> commands[] = {
      {"train", "train a model and write checkpoint, trace and resolved config"},
      {"eval", "evaluate a checkpoint on the test split (mode from eval.mode)"},
      {"generate", "evaluate a checkpoint in autoregressive generation mode"},
      {"sincheck", "compare predictive spread in and out of the training range on sin data"},
      {"compare-trainers", "block-wise against full-batch training over several seeds"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", cl.config_path, "experiment config file")->required();
    sub->add_option("--seed", seed, "run seed (overrides the config)");
    sub->add_option("--out", out, "output directory (overrides the config)");
    if (std::string(name) == "eval" || std::string(name) == "generate") {
      sub->add_option("--checkpoint", cl.checkpoint, "checkpoint file (default <out>/checkpoint.agpc)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : agp::cli::kExitConfig;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    cl.command = sub->get_name();
    if (sub->count("--seed")) cl.seed = seed;
    if (sub->count("--out")) cl.out_dir = out;
  }
  return agp::cli::run_command(cl);
}
