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

// Accuracy change under input perturbations, over several trained seeds.

#ifndef CLORE_EVALHARNESS_ROBUSTNESS_H_
#define CLORE_EVALHARNESS_ROBUSTNESS_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/corpus/text.h"
#include "clore/reasoner/model.h"

namespace clore::eval {

inline constexpr std::array<corpus::PerturbationMode, 3> kPerturbationModes = {
    corpus::PerturbationMode::kPunctuated, corpus::PerturbationMode::kHinted,
    corpus::PerturbationMode::kVerbose};

struct SeededModels {
  std::string name;
  std::vector<const reasoner::Model*> seeds;  // one trained model per seed
};

struct RobustnessRow {
  std::string name;
  corpus::PerturbationMode mode = corpus::PerturbationMode::kNone;
  std::vector<double> clean;   // macro accuracy per seed
  std::vector<double> deltas;  // perturbed - clean, per seed
  double mean_delta = 0.0;
  double sd_delta = 0.0;
  double mean_abs_delta = 0.0;  // mean over seeds of |delta|
};

struct RobustnessReport {
  // kPerturbationModes.size() rows per model, models in input order.
  std::vector<RobustnessRow> rows;
  // The same measurement with PerturbationMode::kNone, one row per model.
  std::vector<RobustnessRow> identity;
};

RobustnessReport RobustnessAnalysis(std::span<const SeededModels> models,
                                    std::span<const corpus::TaskSpec> tasks,
                                    const corpus::PerturbationConfig& config = {},
                                    int jobs = 1);

// "model,mode,seeds,mean_clean,mean_delta,sd_delta,mean_abs_delta" rows,
// perturbation rows first, then the identity controls.
std::string RobustnessCsv(const RobustnessReport& report);
std::string RobustnessSummary(const RobustnessReport& report);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_ROBUSTNESS_H_
