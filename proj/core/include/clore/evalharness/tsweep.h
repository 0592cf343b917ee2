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

// Train-and-evaluate runs across the maximum attribute count T.

#ifndef CLORE_EVALHARNESS_TSWEEP_H_
#define CLORE_EVALHARNESS_TSWEEP_H_

#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/evalharness/eval.h"
#include "clore/reasoner/model.h"
#include "clore/trainer/trainer.h"

namespace clore::eval {

// Largest arity among the most probable templates of every explanation.
int MaxRationaleArity(const reasoner::Model& model,
                      std::span<const corpus::TaskSpec> tasks);

struct TSweepEntry {
  int t_max = 0;
  EvalReport report;
  int max_rationale_arity = 0;
};

// One training run per T (all other settings from `base`), each evaluated on
// `unseen`.
std::vector<TSweepEntry> TSweep(std::span<const corpus::TaskSpec> seen,
                                std::span<const corpus::TaskSpec> unseen,
                                const trainer::TrainConfig& base,
                                std::span<const int> t_values, int jobs = 1);

// "t_max,variant,tasks,macro_accuracy,max_rationale_arity" rows.
std::string TSweepCsv(std::span<const TSweepEntry> entries);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_TSWEEP_H_
