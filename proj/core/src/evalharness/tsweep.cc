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

#include "clore/evalharness/tsweep.h"

#include <algorithm>
#include <cstdio>

#include "clore/parser/parser.h"

namespace clore::eval {

int MaxRationaleArity(const reasoner::Model& model,
                      std::span<const corpus::TaskSpec> tasks) {
  int arity = 0;
  for (const auto& task : tasks) {
    for (const auto& e : task.explanations) {
      const auto parsed = parser::Parse(e, model.vocab, model.encoder, model.parser,
                                        model.config.max_tokens);
      arity = std::max(arity, model.parser.templates[parsed.best_template()].arity());
    }
  }
  return arity;
}

std::vector<TSweepEntry> TSweep(std::span<const corpus::TaskSpec> seen,
                                std::span<const corpus::TaskSpec> unseen,
                                const trainer::TrainConfig& base,
                                std::span<const int> t_values, int jobs) {
  std::vector<TSweepEntry> out;
  EvalOptions options;
  options.jobs = jobs;
  for (const int t : t_values) {
    trainer::TrainConfig config = base;
    config.model.t_max = t;
    const auto ck = trainer::Train(seen, config);
    out.push_back({t, ZeroShotEval(ck, unseen, options), MaxRationaleArity(ck.model, unseen)});
  }
  return out;
}

std::string TSweepCsv(std::span<const TSweepEntry> entries) {
  std::string out = "t_max,variant,tasks,macro_accuracy,max_rationale_arity\n";
  char buf[160];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%d,%s,%zu,%.6f,%d\n", e.t_max,
                  e.report.variant.c_str(), e.report.tasks.size(),
                  e.report.macro_accuracy, e.max_rationale_arity);
    out += buf;
  }
  return out;
}

}  // namespace clore::eval
