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

#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "clore/corpus/generator.h"
#include "clore/diffmath/tape.h"
#include "clore/encoder/vocabulary.h"
#include "clore/evalharness/eval.h"
#include "clore/parser/parser.h"
#include "clore/reasoner/model.h"
#include "clore/reasoner/reasoner.h"
#include "clore/rng.h"
#include "clore/templates/logic_template.h"
#include "clore/trainer/adamw.h"
#include "clore/trainer/trainer.h"

namespace {

using namespace clore;

std::vector<corpus::TaskSpec> Tasks(int n) {
  corpus::GeneratorConfig g;
  g.num_tasks = n;
  return corpus::GenerateSyntheticSuite(g, 1);
}

reasoner::Model MakeModel(const std::vector<corpus::TaskSpec>& tasks, std::size_t dim) {
  reasoner::ModelConfig c;
  c.dim = dim;
  return reasoner::Model::Init(c, encoder::Vocabulary::Build(tasks), 1);
}

// Cosine rows against a vector followed by a max: the core match reduction.
void BM_CosineMaxForwardBackward(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 64;
  Rng rng = MakeRng(1, Stream::kEval);
  diff::Value m(diff::Shape{k, d}), v(diff::Shape{d, 1});
  for (double& x : m.data()) x = Normal(rng, 0, 1);
  for (double& x : v.data()) x = Normal(rng, 0, 1);
  diff::Parameter pm("m", m), pv("v", v);
  diff::Tape tape;
  const auto out = tape.ReduceMax(tape.CosineRows(tape.Param(pm), tape.Param(pv)));
  for (auto _ : state) {
    tape.Forward();
    tape.Backward(out);
    benchmark::DoNotOptimize(tape.grad(tape.Param(pv)).data().data());
  }
}
BENCHMARK(BM_CosineMaxForwardBackward)->Arg(16)->Arg(64)->Arg(128);

void BM_EnumerateTemplates(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(templates::EnumerateTemplates(t));
}
BENCHMARK(BM_EnumerateTemplates)->DenseRange(1, 4);

void BM_ExecuteTemplates(benchmark::State& state) {
  const auto list = templates::EnumerateTemplates(3);
  const std::array<double, 3> s = {0.2, 0.7, 0.9};
  for (auto _ : state) {
    double acc = 0;
    for (const auto& t : list) acc += templates::Execute(t, s);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ExecuteTemplates);

void BM_ParseExplanation(benchmark::State& state) {
  const auto tasks = Tasks(2);
  const auto model = MakeModel(tasks, static_cast<std::size_t>(state.range(0)));
  const auto& e = tasks[0].explanations[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        parser::Parse(e, model.vocab, model.encoder, model.parser, model.config.max_tokens));
  }
}
BENCHMARK(BM_ParseExplanation)->Arg(16)->Arg(64);

void BM_ClassifyRow(benchmark::State& state) {
  const auto tasks = Tasks(2);
  const auto model = MakeModel(tasks, static_cast<std::size_t>(state.range(0)));
  reasoner::Classifier classifier(model, tasks[0]);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classifier.Classify(tasks[0].rows[i]));
    i = (i + 1) % tasks[0].rows.size();
  }
}
BENCHMARK(BM_ClassifyRow)->Arg(16)->Arg(64);

// One minibatch of 16 rows: graph build, forward, backward, AdamW step.
void BM_TrainStep(benchmark::State& state) {
  const auto tasks = Tasks(2);
  auto model = MakeModel(tasks, 64);
  trainer::AdamW opt(model.Parameters(), {});
  std::vector<const corpus::RowExample*> rows;
  for (std::size_t i = 0; i < 16; ++i) rows.push_back(&tasks[0].rows[i]);
  for (auto _ : state) {
    diff::Tape tape;
    reasoner::TaskGraph graph(tape, model, tasks[0]);
    const auto loss = trainer::LossOnTape(graph, rows);
    tape.Forward();
    tape.Backward(loss);
    for (auto* p : model.Parameters()) {
      p->ZeroGrad();
      tape.AccumulateGrad(*p);
    }
    opt.Step();
  }
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_EvaluateSuite(benchmark::State& state) {
  const auto tasks = Tasks(10);
  const auto model = MakeModel(tasks, 64);
  eval::EvalOptions options;
  options.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval::EvaluateModel(model, tasks, options));
}
BENCHMARK(BM_EvaluateSuite)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
