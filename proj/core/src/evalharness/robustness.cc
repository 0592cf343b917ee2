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

#include "clore/evalharness/robustness.h"

#include <cmath>
#include <cstdio>

#include "clore/error.h"
#include "clore/evalharness/eval.h"
#include "clore/evalharness/stats.h"

namespace clore::eval {
namespace {

RobustnessRow Measure(const SeededModels& m, corpus::PerturbationMode mode,
                      std::span<const double> clean,
                      std::span<const corpus::TaskSpec> tasks,
                      const corpus::PerturbationConfig& config, int jobs) {
  RobustnessRow row;
  row.name = m.name;
  row.mode = mode;
  row.clean.assign(clean.begin(), clean.end());
  EvalOptions options{mode, config, jobs};
  for (std::size_t s = 0; s < m.seeds.size(); ++s) {
    const double perturbed = EvaluateModel(*m.seeds[s], tasks, options).macro_accuracy;
    row.deltas.push_back(perturbed - clean[s]);
  }
  row.mean_delta = Mean(row.deltas);
  row.sd_delta = SampleStddev(row.deltas);
  for (const double d : row.deltas) row.mean_abs_delta += std::fabs(d);
  row.mean_abs_delta /= static_cast<double>(row.deltas.size());
  return row;
}

}  // namespace

RobustnessReport RobustnessAnalysis(std::span<const SeededModels> models,
                                    std::span<const corpus::TaskSpec> tasks,
                                    const corpus::PerturbationConfig& config,
                                    int jobs) {
  RobustnessReport report;
  for (const auto& m : models) {
    if (m.seeds.empty()) throw InvalidArgument("model '" + m.name + "' has no seeds");
    std::vector<double> clean;
    EvalOptions options{corpus::PerturbationMode::kNone, config, jobs};
    for (const auto* model : m.seeds) {
      if (model == nullptr) throw InvalidArgument("model '" + m.name + "' is null");
      clean.push_back(EvaluateModel(*model, tasks, options).macro_accuracy);
    }
    for (const auto mode : kPerturbationModes) {
      report.rows.push_back(Measure(m, mode, clean, tasks, config, jobs));
    }
    report.identity.push_back(
        Measure(m, corpus::PerturbationMode::kNone, clean, tasks, config, jobs));
  }
  return report;
}

std::string RobustnessCsv(const RobustnessReport& report) {
  std::string out = "model,mode,seeds,mean_clean,mean_delta,sd_delta,mean_abs_delta\n";
  char buf[256];
  const auto emit = [&](const RobustnessRow& r) {
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%.6f,%.6f,%.6f,%.6f\n", r.name.c_str(),
                  std::string(corpus::PerturbationName(r.mode)).c_str(), r.deltas.size(),
                  Mean(r.clean), r.mean_delta, r.sd_delta, r.mean_abs_delta);
    out += buf;
  };
  for (const auto& r : report.rows) emit(r);
  for (const auto& r : report.identity) emit(r);
  return out;
}

std::string RobustnessSummary(const RobustnessReport& report) {
  std::string out;
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-8s %-10s delta %+.4f (sd %.4f, %zu seeds)\n",
                  r.name.c_str(), std::string(corpus::PerturbationName(r.mode)).c_str(),
                  r.mean_delta, r.sd_delta, r.deltas.size());
    out += buf;
  }
  for (const auto& r : report.identity) {
    std::snprintf(buf, sizeof buf, "%-8s identity   delta %+.4f\n", r.name.c_str(),
                  r.mean_delta);
    out += buf;
  }
  return out;
}

}  // namespace clore::eval
