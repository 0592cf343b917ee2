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

#include "clore/templates/logic_template.h"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "clore/error.h"
#include "clore/rng.h"
#include "testing/template_oracle.h"

namespace clore::templates {
namespace {

std::vector<std::string> Compact(const std::vector<LogicTemplate>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.compact());
  return out;
}

TEST(EnumerateTemplatesTest, CountsForSmallT) {
  EXPECT_EQ(EnumerateTemplates(1).size(), 1u);
  EXPECT_EQ(EnumerateTemplates(2).size(), 3u);
  EXPECT_EQ(EnumerateTemplates(3).size(), 7u);
}

TEST(EnumerateTemplatesTest, ThreeAttributeListInOrder) {
  const std::vector<std::string> expected = {
      "a1",
      "a1 ∧ a2",
      "a1 ∨ a2",
      "a1 ∧ a2 ∧ a3",
      "a1 ∨ a2 ∨ a3",
      "(a1 ∧ a2) ∨ a3",
      "(a1 ∨ a2) ∧ a3",
  };
  EXPECT_EQ(Compact(EnumerateTemplates(3)), expected);
}

TEST(EnumerateTemplatesTest, PrefixesAreStable) {
  const auto t4 = EnumerateTemplates(4);
  const auto t3 = EnumerateTemplates(3);
  for (std::size_t i = 0; i < t3.size(); ++i) EXPECT_EQ(t4[i], t3[i]);
}

TEST(EnumerateTemplatesTest, MatchesBruteForceCanonicalization) {
  const auto listed = EnumerateTemplates(4);
  for (int k = 1; k <= 4; ++k) {
    std::set<std::string> got;
    for (const auto& t : listed) {
      if (t.arity() == k) got.insert(testing::CanonicalShape(t));
    }
    EXPECT_EQ(got, testing::BruteForceShapes(k)) << "arity " << k;
  }
  // 1 + 2 + 4 + 10 distinct shapes.
  EXPECT_EQ(listed.size(), 17u);
}

TEST(EnumerateTemplatesTest, RejectsOutOfRange) {
  EXPECT_THROW(EnumerateTemplates(0), InvalidArgument);
  EXPECT_THROW(EnumerateTemplates(5), InvalidArgument);
}

TEST(ExecuteTest, AndIsMin) {
  const auto ts = EnumerateTemplates(3);
  const double s[] = {0.9, 0.4};
  EXPECT_EQ(Execute(ts[1], s), 0.4);
}

TEST(ExecuteTest, Composition) {
  const auto t = ParseTemplate("(a1 ∧ a2) ∨ a3");
  const double s[] = {0.2, 0.8, 0.7};
  EXPECT_EQ(Execute(t, s), 0.7);
}

TEST(ExecuteTest, ExtraScoresAreIgnored) {
  const auto ts = EnumerateTemplates(3);
  const double s[] = {0.3, 0.9, 0.1};
  EXPECT_EQ(Execute(ts[0], s), 0.3);
  EXPECT_EQ(Execute(ts[2], s), 0.9);
}

TEST(ExecuteTest, RejectsBadScores) {
  const auto ts = EnumerateTemplates(3);
  const double out_of_range[] = {0.3, 1.2, 0.1};
  EXPECT_THROW(Execute(ts[3], out_of_range), InvalidArgument);
  const double too_few[] = {0.3};
  EXPECT_THROW(Execute(ts[1], too_few), InvalidArgument);
}

TEST(ExecuteTest, AgreesWithHandWrittenInterpreters) {
  const auto ts = EnumerateTemplates(3);
  const auto& fns = testing::HandWrittenT3();
  ASSERT_EQ(ts.size(), fns.size());
  Rng rng = MakeRng(3, Stream::kEval);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::array<double, 3> s{UniformReal(rng), UniformReal(rng),
                              UniformReal(rng)};
      EXPECT_EQ(Execute(ts[i], s), fns[i](s)) << ts[i].compact();
    }
  }
}

TEST(ExecuteTest, MonotoneAndBounded) {
  const auto ts = EnumerateTemplates(4);
  Rng rng = MakeRng(4, Stream::kEval);
  for (const auto& t : ts) {
    for (int trial = 0; trial < 200; ++trial) {
      std::array<double, 4> s{};
      for (double& x : s) x = UniformReal(rng);
      const double base = Execute(t, s);
      const auto k = static_cast<std::size_t>(t.arity());
      const auto [lo, hi] = std::minmax_element(s.begin(), s.begin() + k);
      EXPECT_GE(base, *lo);
      EXPECT_LE(base, *hi);
      const auto slot = static_cast<std::size_t>(UniformInt(rng, 0, 3));
      auto bumped = s;
      bumped[slot] = UniformReal(rng, s[slot], 1.0);
      EXPECT_GE(Execute(t, bumped), base);
    }
  }
}

TEST(RenderTest, SingleAttribute) {
  EXPECT_EQ(Render(EnumerateTemplates(1)[0]), "label(X) = attr₁(X)");
}

TEST(RenderTest, NestedTemplate) {
  EXPECT_EQ(Render(EnumerateTemplates(3)[6]),
            "label(X) = (attr₁(X) ∨ attr₂(X)) ∧ attr₃(X)");
}

TEST(RenderTest, CustomLabels) {
  const std::vector<std::string> labels = {"with_higher_safety", "and_capacity"};
  EXPECT_EQ(Render(EnumerateTemplates(2)[1], labels),
            "label(X) = with_higher_safety(X) ∧ and_capacity(X)");
}

TEST(RenderTest, ParseOfRenderIsFixpoint) {
  for (const auto& t : EnumerateTemplates(4)) {
    const std::string text = Render(t);
    const LogicTemplate back = ParseTemplate(text);
    EXPECT_EQ(back, t) << text;
    EXPECT_EQ(Render(back), text);
    EXPECT_EQ(ParseTemplate(t.compact()), t);
  }
}

TEST(ParseTemplateTest, AsciiOperators) {
  EXPECT_EQ(ParseTemplate("(a1 & a2) | a3"), EnumerateTemplates(3)[5]);
  EXPECT_EQ(ParseTemplate("a1 OR a2 OR a3"), EnumerateTemplates(3)[4]);
  EXPECT_EQ(ParseTemplate("(a1 and a2) and a3"), EnumerateTemplates(3)[3]);
}

TEST(ParseTemplateTest, RejectsMalformed) {
  EXPECT_THROW(ParseTemplate("a1 & a2 | a3"), InvalidArgument);
  EXPECT_THROW(ParseTemplate("(a1 & a2"), InvalidArgument);
  EXPECT_THROW(ParseTemplate(""), InvalidArgument);
  EXPECT_THROW(ParseTemplate("a1 &"), InvalidArgument);
}

TEST(LogicTemplateTest, RejectsOutOfOrderLeaves) {
  TreeNode n;
  n.op = LogicOp::kAnd;
  n.children = {TreeNode{.leaf = 2}, TreeNode{.leaf = 1}};
  EXPECT_THROW(LogicTemplate{n}, InvalidArgument);
}

TEST(LogicTemplateTest, FlattensAssociativeChains) {
  TreeNode inner;
  inner.op = LogicOp::kOr;
  inner.children = {TreeNode{.leaf = 1}, TreeNode{.leaf = 2}};
  TreeNode outer;
  outer.op = LogicOp::kOr;
  outer.children = {inner, TreeNode{.leaf = 3}};
  EXPECT_EQ(LogicTemplate(outer), EnumerateTemplates(3)[4]);
}

}  // namespace
}  // namespace clore::templates
