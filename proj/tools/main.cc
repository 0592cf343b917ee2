/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// clore: generate suites, train, evaluate and inspect models.
//
// Logging goes to stderr at the level named by CLORE_LOG (error, info or
// debug; default info). Results go to stdout and --out.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "clore/error.h"
#include "commands.h"

namespace {

using clore::cli::RunConfig;

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("clore");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("CLORE_LOG");
  const std::string level = env ? env : "info";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    throw clore::InvalidArgument("CLORE_LOG must be error, info or debug, got '" + level +
                                 "'");
  }
}

void AddSeed(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random stream")->capture_default_str();
}

void AddSuite(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--suite", c.suite, "Suite manifest (manifest.json)")
      ->required()
      ->check(CLI::ExistingFile);
}

void AddCheckpoint(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--checkpoint", c.checkpoints, "Trained checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
}

void AddSplit(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--split", c.split, "Tasks to use: seen, unseen or all")
      ->check(CLI::IsMember({"seen", "unseen", "all"}))
      ->capture_default_str();
}

void AddPerturb(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--perturb", c.perturb, "Input perturbation")
      ->check(CLI::IsMember({"none", "punctuated", "hinted", "verbose"}))
      ->capture_default_str();
}

void AddJobs(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--jobs", c.jobs, "Evaluation threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

CLI::Option* AddVariant(CLI::App* cmd, RunConfig& c, const std::string& help) {
  return cmd->add_option("--variant", c.variant, help)
      ->check(CLI::IsMember({"full", "plain", "sim"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clore: explanation-driven zero-shot classification"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("clore: error: ") + e.what() + "\n";
  });
  RunConfig c;

  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic task suite");
  gen->add_option("--out", c.out, "Output directory")->required();
  AddSeed(gen, c);
  gen->add_option("--tasks", c.tasks, "Number of tasks")->capture_default_str();
  gen->add_option("--seen-fraction", c.seen_fraction, "Fraction of tasks tagged seen")
      ->capture_default_str();
  gen->add_option("--compositional-ratio", c.compositional_ratio,
                  "Expected fraction of compositional explanations");

  auto* train = app.add_subcommand("train", "Train on the seen tasks of a suite");
  AddSuite(train, c);
  train->add_option("--out", c.out, "Output directory")->required();
  AddSeed(train, c);
  train->add_option("--t-max", c.t_max, "Maximum attributes per explanation");
  AddVariant(train, c, "Model variant");
  train->add_option("--epochs", c.epochs, "Training epochs");
  train->add_option("--lr", c.lr, "AdamW learning rate");
  train->add_option("--dim", c.dim, "Embedding width");
  train->add_option("--batch-size", c.batch_size, "Rows per minibatch");
  auto* pretrained =
      train->add_option("--pretrained-vectors", c.pretrained_vectors, "token<TAB>vector file")
          ->check(CLI::ExistingFile);
  train->add_flag("--freeze-pretrained", c.freeze_pretrained,
                  "Keep loaded vectors fixed")
      ->needs(pretrained);

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  AddCheckpoint(eval, c);
  AddSuite(eval, c);
  eval->add_option("--out", c.out, "Output directory")->required();
  auto* guard = AddVariant(eval, c, "Expected checkpoint variant");
  eval->add_flag("--allow-variant-override", c.allow_variant_override,
                 "Run the checkpoint as --variant even if it was trained otherwise")
      ->needs(guard);
  AddPerturb(eval, c);
  AddSplit(eval, c);
  AddJobs(eval, c);

  auto* parse = app.add_subcommand("parse", "Print the parsed rationale of each explanation");
  AddCheckpoint(parse, c);
  AddSuite(parse, c);
  parse->add_option("--task", c.task, "Task id")->required();
  parse->add_option("--out", c.out, "Also write rationale JSON lines here");

  auto* classify = app.add_subcommand("classify", "Export classification traces");
  AddCheckpoint(classify, c);
  AddSuite(classify, c);
  classify->add_option("--task", c.task, "Task id")->required();
  classify->add_option("--rows", c.rows, "Row indices (default: all)")->delimiter(',');
  AddPerturb(classify, c);
  classify->add_option("--out", c.out, "Write traces here instead of stdout");

  auto* report = app.add_subcommand("report", "Run the analysis reports");
  AddCheckpoint(report, c);
  AddSuite(report, c);
  report->add_option("--out", c.out, "Output directory")->required();
  report->add_option("--analysis", c.analyses,
                     "compositionality, robustness, attention, quantifier (default: all)")
      ->delimiter(',');
  report->add_option("--quantifier-table", c.quantifier_table,
                     "word<TAB>probability reference table")
      ->check(CLI::ExistingFile);
  AddSplit(report, c);
  AddJobs(report, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    SetUpLogging();
    clore::cli::Run(c, std::cout);
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "clore " << c.subcommand << ": error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
