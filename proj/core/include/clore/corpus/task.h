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

// Classification tasks over structured rows, with natural-language class
// explanations.

#ifndef CLORE_CORPUS_TASK_H_
#define CLORE_CORPUS_TASK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clore/templates/logic_template.h"

namespace clore::corpus {

enum class Split { kSeen, kUnseen };

std::string_view SplitName(Split s);
Split ParseSplit(std::string_view name);

struct RowExample {
  std::vector<std::string> values;  // one per column
  std::string label;

  bool operator==(const RowExample&) const = default;
};

struct Predicate {
  std::string column;
  std::string value;

  bool operator==(const Predicate&) const = default;
};

// Synthetic ground truth: predicate t binds template slot t.
struct Rule {
  templates::LogicTemplate tmpl;
  std::vector<Predicate> predicates;

  bool operator==(const Rule&) const = default;
};

// Half-open token range [begin, end) over Tokenize(text).
struct KeywordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const KeywordSpan&) const = default;
};

struct ExplanationRecord {
  std::string class_id;
  std::string text;
  std::optional<KeywordSpan> keyword_span;
  std::optional<std::string> quantifier;
  std::optional<Rule> rule;
  // Absent when the source carries no compositionality annotation.
  std::optional<bool> compositional;

  bool operator==(const ExplanationRecord&) const = default;
};

struct TaskSpec {
  std::string task_id;
  std::vector<std::string> columns;
  std::vector<RowExample> rows;
  std::vector<std::string> classes;
  std::vector<ExplanationRecord> explanations;
  Split split = Split::kSeen;

  // Position of `class_id` in `classes`; throws InvalidArgument if absent.
  std::size_t ClassIndex(std::string_view class_id) const;
  std::size_t ColumnIndex(std::string_view column) const;
  // Explanations of one class, in file order.
  std::vector<const ExplanationRecord*> ExplanationsFor(
      std::string_view class_id) const;

  // Throws InvalidArgument naming the first violated invariant.
  void Validate() const;

  bool operator==(const TaskSpec&) const = default;
};

// Hard-logic evaluation of a rule on one row: a predicate is true iff the
// row's value in its column equals its value.
bool RuleHolds(const Rule& rule, const TaskSpec& task, const RowExample& row);

// Disjoint, exhaustive, seeded partition. The seen side gets
// round(fraction * n) tasks, clamped to [1, n - 1]; both sides keep input
// order and carry the matching split tag.
std::pair<std::vector<TaskSpec>, std::vector<TaskSpec>> SplitSeenUnseen(
    std::vector<TaskSpec> tasks, double fraction, std::uint64_t seed);

}  // namespace clore::corpus

#endif  // CLORE_CORPUS_TASK_H_
