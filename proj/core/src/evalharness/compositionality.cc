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

#include "clore/evalharness/compositionality.h"

#include <cstdio>

#include <spdlog/spdlog.h>

#include "clore/error.h"
#include "clore/evalharness/eval.h"

namespace clore::eval {
namespace {

std::optional<std::size_t> FindModel(std::span<const VariantModel> models,
                                     std::string_view name) {
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].name == name) return i;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> CompositionalRatio(const corpus::TaskSpec& task) {
  if (task.explanations.empty()) return std::nullopt;
  std::size_t comp = 0;
  for (const auto& e : task.explanations) {
    if (!e.compositional) return std::nullopt;
    if (*e.compositional) ++comp;
  }
  return static_cast<double>(comp) / static_cast<double>(task.explanations.size());
}

CompositionalityReport CompositionalityAnalysis(std::span<const VariantModel> models,
                                                std::span<const corpus::TaskSpec> tasks,
                                                int jobs) {
  if (models.empty()) throw InvalidArgument("compositionality analysis needs a model");
  CompositionalityReport report;
  std::vector<corpus::TaskSpec> kept;
  std::vector<double> ratios;
  for (const auto& t : tasks) {
    if (const auto r = CompositionalRatio(t)) {
      kept.push_back(t);
      ratios.push_back(*r);
    } else {
      spdlog::warn("task '{}' has explanations without a compositionality flag; skipped",
                   t.task_id);
      report.skipped.push_back(t.task_id);
    }
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    report.points.push_back({kept[i].task_id, ratios[i], {}});
  }
  EvalOptions options;
  options.jobs = jobs;
  for (const auto& m : models) {
    if (m.model == nullptr) throw InvalidArgument("model '" + m.name + "' is null");
    report.model_names.push_back(m.name);
    const EvalReport r = EvaluateModel(*m.model, kept, options);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      report.points[i].accuracy.push_back(r.tasks[i].accuracy);
    }
  }
  const auto full = FindModel(models, "full");
  const auto plain = FindModel(models, "plain");
  if (full && plain) {
    std::vector<double> gaps;
    for (const auto& p : report.points) gaps.push_back(p.accuracy[*full] - p.accuracy[*plain]);
    report.gap_spearman = Spearman(ratios, gaps);
  }
  return report;
}

std::string CompositionalityCsv(const CompositionalityReport& report) {
  const std::vector<std::string>& names = report.model_names;
  std::optional<std::size_t> full, plain;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "full") full = i;
    if (names[i] == "plain") plain = i;
  }
  std::string out = "task_id,ratio";
  for (const auto& n : names) out += "," + n;
  if (full && plain) out += ",gap";
  out += "\n";
  char buf[64];
  for (const auto& p : report.points) {
    out += p.task_id;
    std::snprintf(buf, sizeof buf, ",%.6f", p.ratio);
    out += buf;
    for (const double a : p.accuracy) {
      std::snprintf(buf, sizeof buf, ",%.6f", a);
      out += buf;
    }
    if (full && plain) {
      std::snprintf(buf, sizeof buf, ",%.6f", p.accuracy[*full] - p.accuracy[*plain]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string CompositionalitySummary(const CompositionalityReport& report) {
  std::string out = "tasks: " + std::to_string(report.points.size()) + "\n";
  out += "skipped: " + std::to_string(report.skipped.size()) + "\n";
  out += "spearman(ratio, full - plain): " + report.gap_spearman.ToString() + "\n";
  return out;
}

}  // namespace clore::eval
