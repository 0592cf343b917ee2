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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "clore/diffmath/tape.h"
#include "testing/finite_difference.h"
#include "testing/primitive_cases.h"

namespace clore::diff {
namespace {

TEST(TapeTest, SigmoidOfZeroIsHalf) {
  Tape t;
  EXPECT_DOUBLE_EQ(t.value(t.Sigmoid(t.Constant(0.0))).scalar(), 0.5);
}

TEST(TapeTest, LogitInvertsSigmoid) {
  for (double x : {-3.0, 0.0, 2.0}) {
    Tape t;
    EXPECT_NEAR(t.value(t.Logit(t.Sigmoid(t.Constant(x)))).scalar(), x, 1e-12);
  }
}

TEST(TapeTest, LogitSigmoidIdentityOnGrid) {
  for (int i = -1000; i <= 1000; ++i) {
    const double x = i / 100.0;
    Tape t;
    EXPECT_NEAR(t.value(t.Logit(t.Sigmoid(t.Constant(x)))).scalar(), x, 1e-10)
        << "x=" << x;
  }
}

TEST(TapeTest, SoftmaxOfEqualLogitsIsUniform) {
  Tape t;
  Var s = t.Softmax(t.Input(Value::Vector({1, 1, 1})));
  for (double p : t.value(s).data()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
}

TEST(TapeTest, SoftmaxIsADistribution) {
  Rng rng = MakeRng(7, Stream::kEval);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(9);
    for (double& x : v) x = Normal(rng, 0.0, 20.0);
    Tape t;
    const Value& p = t.value(t.Softmax(t.Input(Value::Vector(v))));
    double sum = 0.0;
    for (double x : p.data()) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(TapeTest, LogitClampsAtTheBoundary) {
  Tape t;
  const double lo = t.value(t.Logit(t.Constant(0.0))).scalar();
  const double hi = t.value(t.Logit(t.Constant(1.0))).scalar();
  EXPECT_NEAR(lo, std::log(kLogitEps / (1 - kLogitEps)), 1e-9);
  EXPECT_NEAR(hi, -lo, 1e-9);
}

TEST(TapeTest, MaxRoutesGradientToWinner) {
  Parameter x("x", Value::Scalar(2.0));
  Parameter y("y", Value::Scalar(1.0));
  Tape t;
  const Var parts[] = {t.Param(x), t.Param(y)};
  Var m = t.ReduceMax(t.Concat(parts));
  t.Backward(m);
  EXPECT_EQ(t.grad(t.Param(x)).scalar(), 1.0);
  EXPECT_EQ(t.grad(t.Param(y)).scalar(), 0.0);
}

TEST(TapeTest, TiesGoToLowestIndex) {
  Tape t;
  Var v = t.Input(Value::Vector({0.3, 0.7, 0.7, 0.3}));
  Var mx = t.ReduceMax(v);
  Var mn = t.ReduceMin(v);
  EXPECT_EQ(t.selected(mx), 1u);
  EXPECT_EQ(t.selected(mn), 0u);
  // Exact duplicates move together, so the margin is to the nearest differing entry.
  EXPECT_NEAR(t.min_tie_margin(), 0.4, 1e-15);
}

TEST(TapeTest, CosineOfZeroVectorIsZero) {
  Parameter u("u", Value::Vector({0, 0, 0}));
  Parameter v("v", Value::Vector({1, 2, 3}));
  Tape t;
  Var c = t.Cosine(t.Param(u), t.Param(v));
  EXPECT_EQ(t.value(c).scalar(), 0.0);
  t.Backward(c);
  for (double g : t.grad(t.Param(v)).data()) EXPECT_EQ(g, 0.0);
}

TEST(TapeTest, ShapeMismatchNamesTheNode) {
  Tape t;
  Var a = t.Input(Value::Vector({1, 2}));
  Var b = t.Input(Value::Vector({1, 2, 3}));
  try {
    t.Add(a, b);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_EQ(e.node(), 2u);
  }
}

TEST(TapeTest, NonFiniteIntermediateIsRejected) {
  Tape t;
  Var big = t.Constant(1e200);
  try {
    t.Mul(big, big);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_EQ(e.node(), 1u);
  }
}

TEST(TapeTest, BackwardBeforeForwardIsRejected) {
  Tape t;
  Var x = t.Placeholder("x", Shape{3, 1});
  Var s = t.Sum(t.Tanh(x));
  EXPECT_FALSE(t.evaluated(s));
  EXPECT_THROW(t.Backward(s), TapeStateError);
  t.Forward({{"x", Value::Vector({0.1, 0.2, 0.3})}});
  EXPECT_NO_THROW(t.Backward(s));
}

TEST(TapeTest, ForwardReturnsNamedOutputs) {
  Tape t;
  Var x = t.Placeholder("x", Shape{2, 1});
  Var y = t.Placeholder("y", Shape{2, 1});
  t.MarkOutput("dot", t.Dot(x, y));
  t.MarkOutput("sum", t.Sum(t.Add(x, y)));
  auto out = t.Forward({{"x", Value::Vector({1, 2})}, {"y", Value::Vector({3, 4})}});
  EXPECT_EQ(out.at("dot").scalar(), 11.0);
  EXPECT_EQ(out.at("sum").scalar(), 10.0);
  out = t.Forward({{"x", Value::Vector({0, 1})}});
  EXPECT_EQ(out.at("dot").scalar(), 4.0);
}

TEST(TapeTest, ForwardRejectsWrongPlaceholderShape) {
  Tape t;
  t.Placeholder("x", Shape{2, 1});
  EXPECT_THROW(t.Forward({{"x", Value::Vector({1, 2, 3})}}), ShapeError);
  EXPECT_THROW(t.Forward({{"nope", Value::Vector({1})}}), InvalidArgument);
}

TEST(TapeTest, FrozenRowsReceiveNoGradient) {
  Parameter table("table", Value::Matrix(3, 2, {1, 2, 3, 4, 5, 6}));
  table.frozen_rows = {false, true, false};
  Tape t;
  Var out = t.Sum(t.MeanRows(t.GatherRows(t.Param(table), {0, 1, 2})));
  t.Backward(out);
  t.AccumulateGrad(table);
  EXPECT_GT(table.grad.at(0, 0), 0.0);
  EXPECT_EQ(table.grad.at(1, 0), 0.0);
  EXPECT_EQ(table.grad.at(1, 1), 0.0);
  EXPECT_GT(table.grad.at(2, 1), 0.0);
}

TEST(TapeTest, CrossEntropyOfUniformLogits) {
  Tape t;
  Var l = t.CrossEntropy(t.Input(Value::Vector({2, 2, 2, 2})), 1);
  EXPECT_NEAR(t.value(l).scalar(), std::log(4.0), 1e-15);
}

TEST(TapeTest, CrossEntropyKeepsConfidentLossesRelativelyAccurate) {
  Parameter z("z", Value::Vector({40.0, 0.0, 1.0}));
  Tape t;
  Var l = t.CrossEntropy(t.Param(z), 0);
  const double expected = std::log1p(std::exp(-40.0) + std::exp(-39.0));
  EXPECT_NEAR(t.value(l).scalar() / expected, 1.0, 1e-12);
  t.Backward(l);
  // d/dz_gold = p_gold - 1 = -(p_1 + p_2).
  EXPECT_NEAR(t.grad(t.Param(z))[0] / -(std::exp(-40.0) + std::exp(-39.0)), 1.0, 1e-12);
}

TEST(TapeTest, TruncateDropsLaterNodesAndBindings) {
  Parameter a("a", Value::Vector({1, 2}));
  Parameter b("b", Value::Vector({3, 4}));
  Tape t;
  Var pa = t.Param(a);
  Var base = t.Sum(pa);
  const std::size_t n = t.size();
  Var pb = t.Param(b);
  t.MarkOutput("late", t.Dot(pa, pb));
  t.Backward(t.Sum(pb));
  t.Truncate(n);
  EXPECT_EQ(t.size(), n);
  EXPECT_EQ(t.value(base).scalar(), 3.0);
  EXPECT_TRUE(t.Forward().empty());
  // b is bound afresh after the cut.
  Var again = t.Param(b);
  EXPECT_EQ(again.id, n);
  Var out = t.Dot(pa, again);
  t.Backward(out);
  EXPECT_EQ(t.grad(pa).vec(), (std::vector<double>{3, 4}));
}

// Central differences, step 1e-6, 100 tie-free seeds per primitive.
class PrimitiveGradientTest
    : public ::testing::TestWithParam<testing::PrimitiveCase> {};

TEST_P(PrimitiveGradientTest, MatchesCentralDifferences) {
  const auto sweep = testing::SweepPrimitive(GetParam(), 100);
  EXPECT_EQ(sweep.accepted, 100);
  EXPECT_LT(sweep.worst_relative_error, 1e-4)
      << "parameter " << sweep.worst_parameter;
}

INSTANTIATE_TEST_SUITE_P(
    AllPrimitives, PrimitiveGradientTest,
    ::testing::ValuesIn(testing::PrimitiveCases()),
    [](const ::testing::TestParamInfo<testing::PrimitiveCase>& info) {
      return info.param.name;
    });

}  // namespace
}  // namespace clore::diff
