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

// Zero-shot evaluation: top-1 accuracy per task on tasks the checkpoint was
// not trained on.

#ifndef CLORE_EVALHARNESS_EVAL_H_
#define CLORE_EVALHARNESS_EVAL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/corpus/text.h"
#include "clore/reasoner/model.h"
#include "clore/trainer/trainer.h"

namespace clore::eval {

struct TaskAccuracy {
  std::string task_id;
  std::size_t rows = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  std::string variant;
  std::string perturbation;
  int t_max = 0;
  std::vector<TaskAccuracy> tasks;
  // Unweighted mean of per-task accuracies.
  double macro_accuracy = 0.0;
};

struct EvalOptions {
  corpus::PerturbationMode perturbation = corpus::PerturbationMode::kNone;
  corpus::PerturbationConfig perturbation_config;
  // Tasks are spread over this many threads; results do not depend on it.
  int jobs = 1;
};

// Correct predictions on every row of one task. The perturbation touches the
// serialized row only.
TaskAccuracy EvaluateTask(const reasoner::Model& model, const corpus::TaskSpec& task,
                          const EvalOptions& options = {});

// Evaluates `model` on `tasks` with no disjointness check.
EvalReport EvaluateModel(const reasoner::Model& model,
                         std::span<const corpus::TaskSpec> tasks,
                         const EvalOptions& options = {});

// Rejects (InvalidArgument) any task whose id the checkpoint was trained on.
EvalReport ZeroShotEval(const trainer::Checkpoint& checkpoint,
                        std::span<const corpus::TaskSpec> unseen,
                        const EvalOptions& options = {});

// "task_id,rows,correct,accuracy" with a final "macro" row.
std::string EvalCsv(const EvalReport& report);
// A few human-readable lines.
std::string EvalSummary(const EvalReport& report);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_EVAL_H_
