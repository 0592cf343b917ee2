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
#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include "clore/corpus/generator.h"
#include "clore/error.h"
#include "clore/rng.h"
#include "clore/trainer/checkpoint.h"
#include "testing/finite_difference.h"

namespace clore::trainer {
namespace {

using corpus::TaskSpec;
using diff::Tape;
using diff::Var;

std::vector<TaskSpec> SmallSuite(int tasks, int classes, std::uint64_t seed,
                                 int rows = 12) {
  corpus::GeneratorConfig g;
  g.num_tasks = tasks;
  g.classes_per_task = classes;
  g.columns = 3;
  g.rows_per_task = rows;
  g.explanations_per_class = 1;
  return corpus::GenerateSyntheticSuite(g, seed);
}

TrainConfig SmallConfig(std::uint64_t seed, int epochs = 2) {
  TrainConfig c;
  c.epochs = epochs;
  c.batch_size = 4;
  c.seed = seed;
  c.model.dim = 12;
  c.optimizer.lr = 1e-2;
  return c;
}

std::vector<const corpus::RowExample*> RowPtrs(const TaskSpec& task) {
  std::vector<const corpus::RowExample*> out;
  for (const auto& r : task.rows) out.push_back(&r);
  return out;
}

TEST(LossTest, EqualClassScoresGiveLogK) {
  // Every class carries the same explanation text, so scores tie exactly.
  auto task = SmallSuite(1, 3, 7)[0];
  for (auto& e : task.explanations) e.text = "if color is red , then it is so .";
  const auto model = reasoner::Model::Init({.dim = 8}, encoder::Vocabulary::Build(
                                                           std::span(&task, 1)),
                                           3);
  Tape tape;
  reasoner::TaskGraph graph(tape, model, task);
  const auto rows = RowPtrs(task);
  const Var loss = LossOnTape(graph, rows);
  EXPECT_NEAR(tape.value(loss).scalar(), std::log(3.0), 1e-12);
}

TEST(LossTest, LargeBetaWithSeparatedScoresApproachesZero) {
  for (const double beta : {10.0, 20.0, 40.0}) {
    Tape tape;
    const Var logits = tape.Scale(tape.Input(diff::Value::Vector({0.0, 1.0, 0.0})),
                                  tape.Constant(beta));
    const double loss = tape.value(tape.CrossEntropy(logits, 1)).scalar();
    const double expected = std::log1p(2.0 * std::exp(-beta));
    EXPECT_NEAR(loss, expected, 1e-14);
  }
  Tape tape;
  const Var logits =
      tape.Scale(tape.Input(diff::Value::Vector({0.0, 1.0})), tape.Constant(60.0));
  EXPECT_LT(tape.value(tape.CrossEntropy(logits, 1)).scalar(), 1e-25);
}

TEST(LossTest, EmptyBatchRejected) {
  auto tasks = SmallSuite(1, 2, 1);
  const auto model =
      reasoner::Model::Init({.dim = 8}, encoder::Vocabulary::Build(tasks), 3);
  Tape tape;
  reasoner::TaskGraph graph(tape, model, tasks[0]);
  EXPECT_THROW(LossOnTape(graph, {}), InvalidArgument);
}

class LossGradientTest : public ::testing::TestWithParam<reasoner::Variant> {};

TEST_P(LossGradientTest, MatchesFiniteDifferencesOnTwoClassTask) {
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 12 && accepted < 8; ++seed) {
    auto tasks = SmallSuite(1, 2, 100 + seed, 6);
    reasoner::ModelConfig mc;
    mc.dim = 6;
    mc.variant = GetParam();
    auto model = reasoner::Model::Init(mc, encoder::Vocabulary::Build(tasks), seed);
    Rng rng = MakeRng(seed, Stream::kEval);
    for (auto* p : model.Parameters()) {
      for (double& x : p->value.data()) x += Normal(rng, 0.0, 0.3);
    }
    const TaskSpec& task = tasks[0];
    std::vector<const corpus::RowExample*> rows = {&task.rows[0], &task.rows[1],
                                                   &task.rows[2]};
    const auto r = testing::CheckGradients(model.Parameters(), [&](Tape& tape) {
      reasoner::TaskGraph graph(tape, model, task);
      return LossOnTape(graph, rows);
    });
    if (r.tie_margin < 1e-5) continue;
    ++accepted;
    EXPECT_LT(r.worst_relative_error, 1e-4) << r.worst_parameter << " seed " << seed;
  }
  EXPECT_GE(accepted, 8);
}

INSTANTIATE_TEST_SUITE_P(Variants, LossGradientTest,
                         ::testing::Values(reasoner::Variant::kFull,
                                           reasoner::Variant::kPlain,
                                           reasoner::Variant::kSim),
                         [](const auto& info) {
                           return std::string(reasoner::VariantName(info.param));
                         });

TEST(TrainTest, SameSeedGivesByteIdenticalCheckpoints) {
  const auto tasks = SmallSuite(3, 2, 5);
  const auto a = SerializeCheckpoint(Train(tasks, SmallConfig(9)));
  const auto b = SerializeCheckpoint(Train(tasks, SmallConfig(9)));
  EXPECT_EQ(a, b);
  const auto c = SerializeCheckpoint(Train(tasks, SmallConfig(10)));
  EXPECT_NE(a, c);
}

TEST(TrainTest, ZeroLearningRateKeepsMetricsConstant) {
  const auto tasks = SmallSuite(2, 3, 6);
  auto config = SmallConfig(1, 3);
  config.optimizer.lr = 0.0;
  const auto ck = Train(tasks, config);
  ASSERT_EQ(ck.history.size(), 4u);
  for (const auto& row : ck.history) {
    EXPECT_EQ(row.accuracy, ck.history[0].accuracy);
    EXPECT_EQ(row.loss, ck.history[0].loss);
  }
}

TEST(TrainTest, OneEpochLowersLossOnDefaultSizedTasks) {
  // Default generator shape (5 columns, 3 classes, 60 rows, 2 explanations
  // per class) on a reduced task count.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    corpus::GeneratorConfig g;
    g.num_tasks = 6;
    auto tasks = corpus::GenerateSyntheticSuite(g, seed);
    TrainConfig config;
    config.epochs = 1;
    config.seed = seed;
    const auto ck = Train(tasks, config);
    ASSERT_EQ(ck.history.size(), 2u);
    EXPECT_LT(ck.history[1].loss, ck.history[0].loss) << "seed " << seed;
  }
}

TEST(TrainTest, DoesNotMutateTasks) {
  const auto tasks = SmallSuite(2, 2, 8);
  const auto copy = tasks;
  Train(tasks, SmallConfig(2, 1));
  EXPECT_EQ(tasks, copy);
}

TEST(TrainTest, MonitorTasksAddUnseenRows) {
  const auto tasks = SmallSuite(3, 2, 11);
  std::vector<int> epochs;
  const auto ck = Train(std::span(tasks).first(2), SmallConfig(3, 2),
                        std::span(tasks).last(1),
                        [&](int e, const std::vector<MetricsRow>& rows) {
                          epochs.push_back(e);
                          EXPECT_EQ(rows.size(), 2u);
                        });
  EXPECT_EQ(epochs, (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(ck.history.size(), 6u);
  EXPECT_EQ(ck.history[1].split, "unseen");
  EXPECT_EQ(ck.train_task_ids.size(), 2u);
}

TEST(TrainTest, RejectsBadConfigAndInputs) {
  const auto tasks = SmallSuite(1, 2, 1);
  auto c = SmallConfig(1);
  c.epochs = 0;
  EXPECT_THROW(Train(tasks, c), InvalidArgument);
  c = SmallConfig(1);
  c.batch_size = 0;
  EXPECT_THROW(Train(tasks, c), InvalidArgument);
  c = SmallConfig(1);
  c.model.beta_init = 0.0;
  EXPECT_THROW(Train(tasks, c), InvalidArgument);
  EXPECT_THROW(Train({}, SmallConfig(1)), InvalidArgument);
}

TEST(TrainTest, DivergenceReportsEpochAndStep) {
  const auto tasks = SmallSuite(1, 2, 4);
  auto c = SmallConfig(1, 3);
  c.optimizer.lr = 1e300;
  try {
    Train(tasks, c);
    FAIL() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos) << e.what();
  }
}

TEST(MetricsCsvTest, Format) {
  const std::vector<MetricsRow> h = {{0, "seen", 0.5, 1.25}, {1, "unseen", 1.0, 0.0}};
  EXPECT_EQ(MetricsCsv(h),
            "epoch,split,accuracy,loss\n0,seen,0.500000,1.250000\n"
            "1,unseen,1.000000,0.000000\n");
}

class CheckpointTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    tasks_ = new std::vector<TaskSpec>(SmallSuite(3, 2, 21));
    auto c = SmallConfig(4, 2);
    c.model.variant = reasoner::Variant::kPlain;
    ck_ = new Checkpoint(Train(*tasks_, c));
  }
  static void TearDownTestSuite() {
    delete ck_;
    delete tasks_;
  }
  static std::vector<TaskSpec>* tasks_;
  static Checkpoint* ck_;
};
std::vector<TaskSpec>* CheckpointTest::tasks_ = nullptr;
Checkpoint* CheckpointTest::ck_ = nullptr;

TEST_F(CheckpointTest, RoundTripIsBitExactAndReproducesMetrics) {
  const auto path = std::filesystem::temp_directory_path() / "clore_ckpt_test.bin";
  SaveCheckpoint(path, *ck_);
  const auto loaded = LoadCheckpoint(path);
  std::filesystem::remove(path);
  const auto a = ck_->model.Parameters();
  const auto b = loaded.model.Parameters();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i]->name, b[i]->name);
    ASSERT_EQ(a[i]->value.size(), b[i]->value.size());
    EXPECT_EQ(std::memcmp(a[i]->value.data().data(), b[i]->value.data().data(),
                          a[i]->value.size() * sizeof(double)),
              0)
        << a[i]->name;
  }
  EXPECT_EQ(loaded.history, ck_->history);
  EXPECT_EQ(loaded.train_task_ids, ck_->train_task_ids);
  EXPECT_EQ(loaded.epoch, 2);
  EXPECT_EQ(loaded.model.vocab.Dump(), ck_->model.vocab.Dump());
  const auto before = Measure(ck_->model, *tasks_);
  const auto after = Measure(loaded.model, *tasks_);
  EXPECT_EQ(before.accuracy, after.accuracy);
  EXPECT_EQ(before.loss, after.loss);
  EXPECT_EQ(SerializeCheckpoint(loaded), SerializeCheckpoint(*ck_));
}

TEST_F(CheckpointTest, TruncatedFileRejected) {
  const auto bytes = SerializeCheckpoint(*ck_);
  for (std::size_t n = 0; n < bytes.size(); n += 1 + n / 7) {
    EXPECT_THROW(ParseCheckpoint(std::string_view(bytes).substr(0, n)), FormatError)
        << "prefix " << n;
  }
  EXPECT_THROW(ParseCheckpoint(std::string_view(bytes).substr(0, bytes.size() - 1)),
               FormatError);
  EXPECT_THROW(ParseCheckpoint(bytes + "x"), FormatError);
}

TEST_F(CheckpointTest, VersionMismatchRejected) {
  auto bytes = SerializeCheckpoint(*ck_);
  bytes[8] = static_cast<char>(kCheckpointVersion + 1);
  try {
    ParseCheckpoint(bytes);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  bytes[0] = 'X';
  EXPECT_THROW(ParseCheckpoint(bytes), FormatError);
}

TEST_F(CheckpointTest, VariantGuardNeedsOverride) {
  const auto bytes = SerializeCheckpoint(*ck_);
  LoadOptions opts;
  opts.expected_variant = reasoner::Variant::kFull;
  EXPECT_THROW(ParseCheckpoint(bytes, opts), InvalidArgument);
  opts.allow_variant_override = true;
  const auto ck = ParseCheckpoint(bytes, opts);
  EXPECT_EQ(ck.model.config.variant, reasoner::Variant::kFull);
  opts = {};
  opts.expected_variant = reasoner::Variant::kPlain;
  EXPECT_EQ(ParseCheckpoint(bytes, opts).model.config.variant, reasoner::Variant::kPlain);
}

}  // namespace
}  // namespace clore::trainer
