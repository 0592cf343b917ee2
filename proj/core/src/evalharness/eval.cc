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

#include "clore/evalharness/eval.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "clore/error.h"
#include "clore/reasoner/reasoner.h"

namespace clore::eval {

TaskAccuracy EvaluateTask(const reasoner::Model& model, const corpus::TaskSpec& task,
                          const EvalOptions& options) {
  TaskAccuracy out;
  out.task_id = task.task_id;
  reasoner::Classifier classifier(model, task);
  for (const auto& row : task.rows) {
    const auto c = classifier.Classify(row, options.perturbation,
                                       options.perturbation_config);
    ++out.rows;
    if (task.classes[c.predicted] == row.label) ++out.correct;
  }
  out.accuracy = out.rows == 0 ? 0.0
                               : static_cast<double>(out.correct) /
                                     static_cast<double>(out.rows);
  return out;
}

EvalReport EvaluateModel(const reasoner::Model& model,
                         std::span<const corpus::TaskSpec> tasks,
                         const EvalOptions& options) {
  if (options.jobs < 1) throw InvalidArgument("--jobs must be >= 1");
  EvalReport report;
  report.variant = reasoner::VariantName(model.config.variant);
  report.perturbation = corpus::PerturbationName(options.perturbation);
  report.t_max = model.config.t_max;
  report.tasks.resize(tasks.size());

  // Each worker claims task indices; results land in fixed slots.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        report.tasks[i] = EvaluateTask(model, tasks[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto jobs = std::min<std::size_t>(static_cast<std::size_t>(options.jobs),
                                          std::max<std::size_t>(tasks.size(), 1));
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0;
  for (const auto& t : report.tasks) sum += t.accuracy;
  report.macro_accuracy = tasks.empty() ? 0.0 : sum / static_cast<double>(tasks.size());
  return report;
}

EvalReport ZeroShotEval(const trainer::Checkpoint& checkpoint,
                        std::span<const corpus::TaskSpec> unseen,
                        const EvalOptions& options) {
  const std::set<std::string> trained(checkpoint.train_task_ids.begin(),
                                      checkpoint.train_task_ids.end());
  for (const auto& t : unseen) {
    if (trained.count(t.task_id)) {
      throw InvalidArgument("task '" + t.task_id +
                            "' was used for training; zero-shot evaluation needs "
                            "disjoint tasks");
    }
  }
  return EvaluateModel(checkpoint.model, unseen, options);
}

std::string EvalCsv(const EvalReport& report) {
  std::string out = "task_id,rows,correct,accuracy\n";
  char line[256];
  for (const auto& t : report.tasks) {
    std::snprintf(line, sizeof line, "%s,%zu,%zu,%.6f\n", t.task_id.c_str(), t.rows,
                  t.correct, t.accuracy);
    out += line;
  }
  std::size_t rows = 0, correct = 0;
  for (const auto& t : report.tasks) {
    rows += t.rows;
    correct += t.correct;
  }
  std::snprintf(line, sizeof line, "macro,%zu,%zu,%.6f\n", rows, correct,
                report.macro_accuracy);
  out += line;
  return out;
}

std::string EvalSummary(const EvalReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "variant: %s\nperturbation: %s\nT: %d\ntasks: %zu\nmacro accuracy: %.4f\n",
                report.variant.c_str(), report.perturbation.c_str(), report.t_max,
                report.tasks.size(), report.macro_accuracy);
  return buf;
}

}  // namespace clore::eval
