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

// End-to-end training on seen tasks.
//
// Each epoch splits every task's rows (shuffled) into minibatches of
// batch_size rows and visits all minibatches of all tasks in one shuffled
// order. A minibatch's loss is the mean softmax cross-entropy of
// beta * class scores against the gold labels.

#ifndef CLORE_TRAINER_TRAINER_H_
#define CLORE_TRAINER_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/diffmath/tape.h"
#include "clore/reasoner/model.h"
#include "clore/reasoner/reasoner.h"
#include "clore/trainer/adamw.h"

namespace clore::trainer {

struct TrainConfig {
  int epochs = 30;
  std::size_t batch_size = 16;
  std::uint64_t seed = 0;
  AdamWConfig optimizer;
  reasoner::ModelConfig model;
  // Optional token<TAB>vector file; rows found there can be frozen.
  std::string pretrained_vectors;
  bool freeze_pretrained = false;
  // Keeps the whole token table at its initial values.
  bool freeze_embeddings = false;

  // Throws InvalidArgument.
  void Validate() const;
};

struct MetricsRow {
  int epoch = 0;
  std::string split;
  double accuracy = 0.0;
  double loss = 0.0;

  bool operator==(const MetricsRow&) const = default;
};

struct Checkpoint {
  TrainConfig config;
  reasoner::Model model;
  int epoch = 0;
  std::vector<MetricsRow> history;
  std::vector<std::string> train_task_ids;
};

// Mean cross-entropy over `rows` of the graph's task. Rows must be nonempty.
diff::Var LossOnTape(const reasoner::TaskGraph& graph,
                     std::span<const corpus::RowExample* const> rows);

struct TaskMetrics {
  double accuracy = 0.0;
  double loss = 0.0;
  std::size_t rows = 0;
};

// Row-weighted accuracy and mean loss of `model` on every row of `tasks`.
TaskMetrics Measure(const reasoner::Model& model,
                    std::span<const corpus::TaskSpec> tasks);

// Called after every epoch with the rows just appended to the history.
using EpochCallback = std::function<void(int epoch, const std::vector<MetricsRow>&)>;

// Trains a fresh model. `monitor` tasks are only measured (split "unseen").
// Throws Error naming epoch and step if the loss becomes non-finite.
Checkpoint Train(std::span<const corpus::TaskSpec> seen, const TrainConfig& config,
                 std::span<const corpus::TaskSpec> monitor = {},
                 const EpochCallback& on_epoch = {});

// "epoch,split,accuracy,loss" CSV.
std::string MetricsCsv(std::span<const MetricsRow> history);

}  // namespace clore::trainer

#endif  // CLORE_TRAINER_TRAINER_H_
