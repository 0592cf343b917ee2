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

// Accuracy against the share of compositional explanations per task.

#ifndef CLORE_EVALHARNESS_COMPOSITIONALITY_H_
#define CLORE_EVALHARNESS_COMPOSITIONALITY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/evalharness/stats.h"
#include "clore/reasoner/model.h"

namespace clore::eval {

// Compositional explanations / all explanations; nullopt if any explanation
// lacks the flag or the task has none.
std::optional<double> CompositionalRatio(const corpus::TaskSpec& task);

struct VariantModel {
  std::string name;  // column label, usually the variant name
  const reasoner::Model* model = nullptr;
};

struct CompositionalityPoint {
  std::string task_id;
  double ratio = 0.0;
  std::vector<double> accuracy;  // one per model, in input order
};

struct CompositionalityReport {
  std::vector<std::string> model_names;
  std::vector<CompositionalityPoint> points;
  std::vector<std::string> skipped;  // tasks without flags
  // Spearman of ratio vs (full - plain) accuracy gap; kTooFew when either
  // model is missing.
  Correlation gap_spearman;
};

// Models named "full" and "plain" define the gap.
CompositionalityReport CompositionalityAnalysis(std::span<const VariantModel> models,
                                                std::span<const corpus::TaskSpec> tasks,
                                                int jobs = 1);

// "task_id,ratio,<name>...,gap" rows.
std::string CompositionalityCsv(const CompositionalityReport& report);
std::string CompositionalitySummary(const CompositionalityReport& report);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_COMPOSITIONALITY_H_
