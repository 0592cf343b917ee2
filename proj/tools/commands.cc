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

#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>

#include <spdlog/spdlog.h>

#include "clore/corpus/generator.h"
#include "clore/corpus/task_io.h"
#include "clore/error.h"
#include "clore/evalharness/attention_report.h"
#include "clore/evalharness/compositionality.h"
#include "clore/evalharness/eval.h"
#include "clore/evalharness/quantifier.h"
#include "clore/evalharness/robustness.h"
#include "clore/parser/parser.h"
#include "clore/reasoner/reasoner.h"
#include "clore/templates/logic_template.h"
#include "clore/trainer/checkpoint.h"
#include "clore/trainer/trainer.h"

namespace clore::cli {
namespace {

namespace fs = std::filesystem;
using corpus::TaskSpec;

const std::set<std::string, std::less<>> kSubcommands = {
    "gen-data", "train", "eval", "parse", "classify", "report"};
const std::vector<std::string> kAnalyses = {"compositionality", "robustness",
                                            "attention", "quantifier"};

void Require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

fs::path OutDir(const RunConfig& c) {
  Require(!c.out.empty(), c.subcommand + ": --out is required");
  fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("cannot create output directory " + dir.string() + ": " +
                (ec ? ec.message() : "not a directory"));
  }
  return dir;
}

void Write(const fs::path& path, std::string_view contents) {
  corpus::WriteFile(path, contents);
  spdlog::info("wrote {}", path.string());
}

std::vector<TaskSpec> LoadAll(const RunConfig& c) {
  Require(!c.suite.empty(), c.subcommand + ": --suite is required");
  return corpus::LoadSuite(c.suite);
}

std::vector<TaskSpec> Select(std::vector<TaskSpec> tasks, std::string_view split) {
  if (split == "all") return tasks;
  const auto want = corpus::ParseSplit(split);
  std::erase_if(tasks, [&](const TaskSpec& t) { return t.split != want; });
  Require(!tasks.empty(), "no " + std::string(split) + " tasks in the suite");
  return tasks;
}

const TaskSpec& FindTask(std::span<const TaskSpec> tasks, const std::string& id) {
  Require(!id.empty(), "--task is required");
  for (const auto& t : tasks) {
    if (t.task_id == id) return t;
  }
  throw InvalidArgument("task '" + id + "' is not in the suite");
}

trainer::Checkpoint LoadOne(const RunConfig& c) {
  Require(c.checkpoints.size() == 1,
          c.subcommand + ": exactly one --checkpoint is required");
  trainer::LoadOptions options;
  if (c.variant) options.expected_variant = reasoner::ParseVariant(*c.variant);
  options.allow_variant_override = c.allow_variant_override;
  return trainer::LoadCheckpoint(c.checkpoints.front(), options);
}

// Unseen-task reports must not include training tasks.
void CheckZeroShot(const trainer::Checkpoint& ck, std::span<const TaskSpec> tasks,
                   std::string_view split, const std::string& source) {
  if (split != "unseen") return;
  const std::set<std::string, std::less<>> trained(ck.train_task_ids.begin(),
                                                   ck.train_task_ids.end());
  for (const auto& t : tasks) {
    Require(!trained.contains(t.task_id),
            "task '" + t.task_id + "' was used to train " + source);
  }
}

}  // namespace

void RunConfig::Validate() const {
  Require(kSubcommands.contains(subcommand), "unknown subcommand '" + subcommand + "'");
  Require(jobs >= 1, "--jobs must be at least 1");
  Require(tasks >= 2, "--tasks must be at least 2");
  Require(seen_fraction > 0.0 && seen_fraction < 1.0, "--seen-fraction must be in (0, 1)");
  Require(split == "seen" || split == "unseen" || split == "all",
          "--split must be seen, unseen or all");
  if (variant) reasoner::ParseVariant(*variant);
  corpus::ParsePerturbation(perturb);
  Require(!allow_variant_override || variant.has_value(),
          "--allow-variant-override needs --variant");
  Require(!freeze_pretrained || !pretrained_vectors.empty(),
          "--freeze-pretrained needs --pretrained-vectors");
  if (t_max) Require(*t_max >= 1, "--t-max must be at least 1");
  if (epochs) Require(*epochs >= 1, "--epochs must be at least 1");
  if (dim) Require(*dim >= 1, "--dim must be at least 1");
  if (batch_size) Require(*batch_size >= 1, "--batch-size must be at least 1");
  for (const auto& a : analyses) {
    Require(std::find(kAnalyses.begin(), kAnalyses.end(), a) != kAnalyses.end(),
            "unknown analysis '" + a + "'");
  }
  if (!quantifier_table.empty() && !analyses.empty()) {
    Require(std::find(analyses.begin(), analyses.end(), "quantifier") != analyses.end(),
            "--quantifier-table given but the quantifier analysis is not selected");
  }
  if (subcommand == "eval" || subcommand == "parse" || subcommand == "classify") {
    Require(checkpoints.size() <= 1, subcommand + " takes a single --checkpoint");
  }
}

void GenData(const RunConfig& c, std::ostream& out) {
  corpus::GeneratorConfig g;
  g.num_tasks = c.tasks;
  if (c.compositional_ratio) g.compositional_ratio = *c.compositional_ratio;
  g.Validate();
  const auto dir = OutDir(c);

  auto [seen, unseen] =
      corpus::SplitSeenUnseen(corpus::GenerateSyntheticSuite(g, c.seed), c.seen_fraction, c.seed);
  std::vector<TaskSpec> all = std::move(seen);
  const std::size_t n_seen = all.size();
  all.insert(all.end(), unseen.begin(), unseen.end());
  corpus::SaveSuite(dir, all);

  std::size_t simple = 0, compositional = 0;
  for (const auto& t : all) {
    for (const auto& e : t.explanations) {
      (e.compositional.value_or(false) ? compositional : simple) += 1;
    }
  }
  out << "manifest: " << (dir / "manifest.json").string() << "\n"
      << "seen tasks: " << n_seen << "\n"
      << "unseen tasks: " << all.size() - n_seen << "\n"
      << "simple explanations: " << simple << "\n"
      << "compositional explanations: " << compositional << "\n";
}

void TrainCommand(const RunConfig& c, std::ostream& out) {
  const auto all = LoadAll(c);
  const auto dir = OutDir(c);
  std::vector<TaskSpec> seen, monitor;
  for (const auto& t : all) (t.split == corpus::Split::kSeen ? seen : monitor).push_back(t);
  Require(!seen.empty(), "the suite has no seen tasks to train on");

  trainer::TrainConfig config;
  config.seed = c.seed;
  if (c.epochs) config.epochs = *c.epochs;
  if (c.lr) config.optimizer.lr = *c.lr;
  if (c.batch_size) config.batch_size = static_cast<std::size_t>(*c.batch_size);
  if (c.t_max) config.model.t_max = *c.t_max;
  if (c.dim) config.model.dim = static_cast<std::size_t>(*c.dim);
  if (c.variant) config.model.variant = reasoner::ParseVariant(*c.variant);
  config.pretrained_vectors = c.pretrained_vectors;
  config.freeze_pretrained = c.freeze_pretrained;

  const auto ck = trainer::Train(
      seen, config, monitor, [](int epoch, const std::vector<trainer::MetricsRow>& rows) {
        for (const auto& r : rows) {
          spdlog::info("epoch {} {}: accuracy {:.4f} loss {:.4f}", epoch, r.split,
                       r.accuracy, r.loss);
        }
      });
  trainer::SaveCheckpoint(dir / "checkpoint.bin", ck);
  spdlog::info("wrote {}", (dir / "checkpoint.bin").string());
  Write(dir / "metrics.csv", trainer::MetricsCsv(ck.history));

  for (const auto& r : ck.history) {
    if (r.epoch == ck.epoch) {
      out << r.split << " accuracy " << r.accuracy << " loss " << r.loss << "\n";
    }
  }
}

void EvalCommand(const RunConfig& c, std::ostream& out) {
  const auto ck = LoadOne(c);
  const auto tasks = Select(LoadAll(c), c.split);
  const auto dir = OutDir(c);
  eval::EvalOptions options;
  options.perturbation = corpus::ParsePerturbation(c.perturb);
  options.jobs = c.jobs;
  const auto report = c.split == "unseen" ? eval::ZeroShotEval(ck, tasks, options)
                                          : eval::EvaluateModel(ck.model, tasks, options);
  const std::string stem = "eval_" + report.variant + "_" + report.perturbation;
  Write(dir / (stem + ".csv"), eval::EvalCsv(report));
  const auto summary = eval::EvalSummary(report);
  Write(dir / (stem + ".txt"), summary);
  out << summary;
}

void ParseCommand(const RunConfig& c, std::ostream& out) {
  const auto ck = LoadOne(c);
  const auto all = LoadAll(c);
  const auto& task = FindTask(all, c.task);
  const auto& m = ck.model;
  const auto list = templates::EnumerateTemplates(m.config.t_max);
  std::string jsonl;
  for (const auto& e : task.explanations) {
    const auto parsed =
        parser::Parse(e, m.vocab, m.encoder, m.parser, m.config.max_tokens);
    out << e.class_id << ": " << parser::RenderParse(parsed, list) << "\n";
    jsonl += parser::RationaleJson(parsed, list);
    jsonl += '\n';
  }
  if (!c.out.empty()) Write(OutDir(c) / ("rationale_" + task.task_id + ".jsonl"), jsonl);
}

void ClassifyCommand(const RunConfig& c, std::ostream& out) {
  const auto ck = LoadOne(c);
  const auto all = LoadAll(c);
  const auto& task = FindTask(all, c.task);
  std::vector<std::size_t> rows = c.rows;
  if (rows.empty()) {
    for (std::size_t i = 0; i < task.rows.size(); ++i) rows.push_back(i);
  }
  const auto mode = corpus::ParsePerturbation(c.perturb);
  reasoner::Classifier classifier(ck.model, task);
  std::string jsonl;
  for (const auto i : rows) {
    Require(i < task.rows.size(), "row " + std::to_string(i) + " is out of range; task '" +
                                      task.task_id + "' has " +
                                      std::to_string(task.rows.size()) + " rows");
    const auto result = classifier.Classify(task.rows[i], mode);
    jsonl += reasoner::TraceJson(task, i, result);
    jsonl += '\n';
  }
  if (c.out.empty()) {
    out << jsonl;
  } else {
    Write(OutDir(c) / ("trace_" + task.task_id + ".jsonl"), jsonl);
  }
}

void ReportCommand(const RunConfig& c, std::ostream& out) {
  Require(!c.checkpoints.empty(), "report: at least one --checkpoint is required");
  const auto tasks = Select(LoadAll(c), c.split);
  const auto dir = OutDir(c);
  const auto analyses = c.analyses.empty() ? kAnalyses : c.analyses;
  const auto wants = [&](std::string_view a) {
    return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
  };

  std::vector<trainer::Checkpoint> cks;
  for (const auto& path : c.checkpoints) {
    cks.push_back(trainer::LoadCheckpoint(path));
    CheckZeroShot(cks.back(), tasks, c.split, path);
  }
  // Variants in order of first appearance; seeds in flag order.
  std::vector<eval::SeededModels> groups;
  for (const auto& ck : cks) {
    const std::string name(reasoner::VariantName(ck.model.config.variant));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.name == name; });
    if (it == groups.end()) it = groups.insert(groups.end(), {name, {}});
    it->seeds.push_back(&ck.model);
  }
  // Single-model analyses use the first full checkpoint, else the first.
  const reasoner::Model* primary = groups.front().seeds.front();
  for (const auto& g : groups) {
    if (g.name == "full") primary = g.seeds.front();
  }

  std::string summary;
  if (wants("compositionality")) {
    std::vector<eval::VariantModel> models;
    for (const auto& g : groups) {
      if (g.seeds.size() > 1) {
        spdlog::info("compositionality: using the first of {} {} checkpoints",
                     g.seeds.size(), g.name);
      }
      models.push_back({g.name, g.seeds.front()});
    }
    const auto r = eval::CompositionalityAnalysis(models, tasks, c.jobs);
    Write(dir / "compositionality.csv", eval::CompositionalityCsv(r));
    summary += eval::CompositionalitySummary(r);
  }
  if (wants("robustness")) {
    corpus::PerturbationConfig pc;
    const auto r = eval::RobustnessAnalysis(groups, tasks, pc, c.jobs);
    Write(dir / "robustness.csv", eval::RobustnessCsv(r));
    summary += eval::RobustnessSummary(r);
  }
  if (wants("attention")) {
    const auto h = eval::AttentionPositionAnalysis(*primary, tasks);
    Write(dir / "attention.csv", eval::AttentionCsv(h));
    Write(dir / "attention_points.csv", eval::AttentionPointsCsv(h));
    summary += eval::AttentionSummary(h);
  }
  if (wants("quantifier")) {
    const auto table = c.quantifier_table.empty()
                           ? eval::QuantifierTable{}
                           : eval::LoadQuantifierTable(c.quantifier_table);
    const auto words = eval::DefaultQuantifierWords();
    const auto r = eval::QuantifierAnalysis(*primary, tasks, table, words);
    Write(dir / "quantifier.csv", eval::QuantifierCsv(r));
    summary += eval::QuantifierSummary(r);
  }
  Write(dir / "report.txt", summary);
  out << summary;
}

void Run(const RunConfig& c, std::ostream& out) {
  c.Validate();
  if (c.subcommand == "gen-data") return GenData(c, out);
  if (c.subcommand == "train") return TrainCommand(c, out);
  if (c.subcommand == "eval") return EvalCommand(c, out);
  if (c.subcommand == "parse") return ParseCommand(c, out);
  if (c.subcommand == "classify") return ClassifyCommand(c, out);
  return ReportCommand(c, out);
}

}  // namespace clore::cli
