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

#include "clore/trainer/trainer.h"

#include <cmath>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "clore/corpus/text.h"
#include "clore/encoder/vocabulary.h"
#include "clore/error.h"
#include "clore/rng.h"

namespace clore::trainer {

using diff::Tape;
using diff::Var;

void TrainConfig::Validate() const {
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (batch_size == 0) throw InvalidArgument("batch size must be >= 1");
  if (!(model.beta_init > 0)) throw InvalidArgument("beta must be > 0");
  if (!(optimizer.lr >= 0)) throw InvalidArgument("learning rate must be >= 0");
}

Var LossOnTape(const reasoner::TaskGraph& graph,
               std::span<const corpus::RowExample* const> rows) {
  if (rows.empty()) throw InvalidArgument("loss of an empty batch");
  Tape& tape = graph.tape();
  const auto& task = graph.task();
  std::vector<Var> losses;
  for (const auto* row : rows) {
    const auto vars = graph.ScoreText(corpus::SerializeRow(task.columns, row->values));
    losses.push_back(
        tape.CrossEntropy(graph.Logits(vars), task.ClassIndex(row->label)));
  }
  return tape.Mean(tape.Concat(losses));
}

TaskMetrics Measure(const reasoner::Model& model,
                    std::span<const corpus::TaskSpec> tasks) {
  TaskMetrics out;
  double correct = 0, loss = 0;
  for (const auto& task : tasks) {
    Tape tape;
    reasoner::TaskGraph graph(tape, model, task);
    for (const auto& row : task.rows) {
      const auto vars = graph.ScoreText(corpus::SerializeRow(task.columns, row.values));
      const std::size_t gold = task.ClassIndex(row.label);
      const auto& scores = tape.value(vars.scores).vec();
      std::size_t best = 0;
      for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best]) best = k;
      }
      correct += best == gold ? 1 : 0;
      loss += tape.value(tape.CrossEntropy(graph.Logits(vars), gold)).scalar();
      ++out.rows;
    }
  }
  if (out.rows > 0) {
    out.accuracy = correct / static_cast<double>(out.rows);
    out.loss = loss / static_cast<double>(out.rows);
  }
  return out;
}

namespace {

struct Batch {
  std::size_t task = 0;
  std::vector<std::size_t> rows;
};

std::vector<Batch> EpochBatches(std::span<const corpus::TaskSpec> tasks,
                                std::size_t batch_size, std::uint64_t seed,
                                int epoch) {
  Rng rng = MakeRng(seed, Stream::kShuffle, static_cast<std::uint64_t>(epoch));
  std::vector<Batch> batches;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<std::size_t> order(tasks[t].rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Shuffle(order, rng);
    for (std::size_t i = 0; i < order.size(); i += batch_size) {
      Batch b{t, {}};
      for (std::size_t j = i; j < order.size() && j < i + batch_size; ++j) {
        b.rows.push_back(order[j]);
      }
      batches.push_back(std::move(b));
    }
  }
  Shuffle(batches, rng);
  return batches;
}

void Record(Checkpoint& ck, int epoch, std::span<const corpus::TaskSpec> seen,
            std::span<const corpus::TaskSpec> monitor, const EpochCallback& cb) {
  std::vector<MetricsRow> rows;
  const TaskMetrics s = Measure(ck.model, seen);
  rows.push_back({epoch, "seen", s.accuracy, s.loss});
  if (!monitor.empty()) {
    const TaskMetrics u = Measure(ck.model, monitor);
    rows.push_back({epoch, "unseen", u.accuracy, u.loss});
  }
  for (const auto& r : rows) {
    spdlog::info("epoch {} {}: accuracy {:.4f} loss {:.4f}", r.epoch, r.split,
                 r.accuracy, r.loss);
    ck.history.push_back(r);
  }
  if (cb) cb(epoch, rows);
}

}  // namespace

Checkpoint Train(std::span<const corpus::TaskSpec> seen, const TrainConfig& config,
                 std::span<const corpus::TaskSpec> monitor,
                 const EpochCallback& on_epoch) {
  config.Validate();
  if (seen.empty()) throw InvalidArgument("training needs at least one task");
  for (const auto& t : seen) {
    t.Validate();
    if (t.rows.empty()) {
      throw InvalidArgument("task '" + t.task_id + "' has no rows to train on");
    }
  }

  Checkpoint ck;
  ck.config = config;
  ck.model = reasoner::Model::Init(config.model, encoder::Vocabulary::Build(seen),
                                   config.seed);
  for (const auto& t : seen) ck.train_task_ids.push_back(t.task_id);
  if (!config.pretrained_vectors.empty()) {
    const auto cov = encoder::LoadPretrainedVectors(
        config.pretrained_vectors, ck.model.vocab, ck.model.encoder,
        config.freeze_pretrained);
    spdlog::info("pretrained vectors cover {} of {} tokens", cov.covered,
                 ck.model.vocab.size());
  }

  if (config.freeze_embeddings) {
    ck.model.encoder.table.frozen_rows.assign(ck.model.encoder.table.value.rows(), true);
  }

  auto params = ck.model.Parameters();
  AdamW optimizer(params, config.optimizer);
  Record(ck, 0, seen, monitor, on_epoch);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto batches = EpochBatches(seen, config.batch_size, config.seed, epoch);
    for (std::size_t step = 0; step < batches.size(); ++step) {
      const Batch& b = batches[step];
      const auto& task = seen[b.task];
      std::vector<const corpus::RowExample*> rows;
      for (const std::size_t r : b.rows) rows.push_back(&task.rows[r]);
      Tape tape;
      double loss_value = 0.0;
      try {
        reasoner::TaskGraph graph(tape, ck.model, task);
        const Var loss = LossOnTape(graph, rows);
        loss_value = tape.value(loss).scalar();
        if (std::isfinite(loss_value)) {
          tape.Backward(loss);
          for (auto* p : params) {
            p->ZeroGrad();
            tape.AccumulateGrad(*p);
            if (!p->grad.AllFinite()) loss_value = NAN;
          }
        }
      } catch (const diff::NonFiniteError& e) {
        throw Error("training diverged at epoch " + std::to_string(epoch) +
                    ", step " + std::to_string(step) + ": " + e.what());
      }
      if (!std::isfinite(loss_value)) {
        throw Error("training diverged at epoch " + std::to_string(epoch) +
                    ", step " + std::to_string(step) + ": non-finite loss");
      }
      optimizer.Step();
    }
    ck.epoch = epoch;
    Record(ck, epoch, seen, monitor, on_epoch);
  }
  return ck;
}

std::string MetricsCsv(std::span<const MetricsRow> history) {
  std::string out = "epoch,split,accuracy,loss\n";
  char line[128];
  for (const auto& r : history) {
    std::snprintf(line, sizeof line, "%d,%s,%.6f,%.6f\n", r.epoch, r.split.c_str(),
                  r.accuracy, r.loss);
    out += line;
  }
  return out;
}

}  // namespace clore::trainer
