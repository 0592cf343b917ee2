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

#include "clore/corpus/task.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "clore/rng.h"

namespace clore::corpus {
namespace {

[[noreturn]] void Invalid(const TaskSpec& task, const std::string& what) {
  throw InvalidArgument("task '" + task.task_id + "': " + what);
}

}  // namespace

std::string_view SplitName(Split s) {
  return s == Split::kSeen ? "seen" : "unseen";
}

Split ParseSplit(std::string_view name) {
  if (name == "seen") return Split::kSeen;
  if (name == "unseen") return Split::kUnseen;
  throw InvalidArgument("unknown split '" + std::string(name) +
                        "' (expected seen or unseen)");
}

std::size_t TaskSpec::ClassIndex(std::string_view class_id) const {
  const auto it = std::find(classes.begin(), classes.end(), class_id);
  if (it == classes.end()) {
    Invalid(*this, "unknown class '" + std::string(class_id) + "'");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

std::size_t TaskSpec::ColumnIndex(std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) {
    Invalid(*this, "unknown column '" + std::string(column) + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<const ExplanationRecord*> TaskSpec::ExplanationsFor(
    std::string_view class_id) const {
  std::vector<const ExplanationRecord*> out;
  for (const auto& e : explanations) {
    if (e.class_id == class_id) out.push_back(&e);
  }
  return out;
}

void TaskSpec::Validate() const {
  if (task_id.empty()) Invalid(*this, "empty task id");
  if (columns.empty()) Invalid(*this, "no columns");
  for (const auto& c : columns) {
    if (c.empty()) Invalid(*this, "empty column name");
  }
  if (std::set<std::string>(columns.begin(), columns.end()).size() !=
      columns.size()) {
    Invalid(*this, "duplicate column name");
  }
  if (classes.empty()) Invalid(*this, "no classes");
  if (std::set<std::string>(classes.begin(), classes.end()).size() !=
      classes.size()) {
    Invalid(*this, "duplicate class id");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.values.size() != columns.size()) {
      Invalid(*this, "row " + std::to_string(i) + " has " +
                         std::to_string(row.values.size()) + " values for " +
                         std::to_string(columns.size()) + " columns");
    }
    if (std::find(classes.begin(), classes.end(), row.label) ==
        classes.end()) {
      Invalid(*this, "row " + std::to_string(i) + " label '" + row.label +
                         "' is not a class");
    }
  }
  for (const auto& c : classes) {
    if (ExplanationsFor(c).empty()) {
      Invalid(*this, "class '" + c + "' has no explanation");
    }
  }
  for (std::size_t i = 0; i < explanations.size(); ++i) {
    const auto& e = explanations[i];
    const std::string where = "explanation " + std::to_string(i);
    if (std::find(classes.begin(), classes.end(), e.class_id) ==
        classes.end()) {
      Invalid(*this, where + " names unknown class '" + e.class_id + "'");
    }
    if (e.keyword_span) {
      const std::size_t n = encoder::Tokenize(e.text).size();
      if (e.keyword_span->begin >= e.keyword_span->end ||
          e.keyword_span->end > n) {
        Invalid(*this, where + " keyword span [" +
                           std::to_string(e.keyword_span->begin) + ", " +
                           std::to_string(e.keyword_span->end) +
                           ") outside " + std::to_string(n) + " tokens");
      }
    }
    if (e.rule) {
      const auto arity = static_cast<std::size_t>(e.rule->tmpl.arity());
      if (e.rule->predicates.size() != arity) {
        Invalid(*this, where + " rule has " +
                           std::to_string(e.rule->predicates.size()) +
                           " predicates for a template of arity " +
                           std::to_string(arity));
      }
      for (const auto& p : e.rule->predicates) ColumnIndex(p.column);
      if (e.compositional && *e.compositional != (arity >= 2)) {
        Invalid(*this, where + " compositional flag disagrees with its rule");
      }
    }
  }
}

bool RuleHolds(const Rule& rule, const TaskSpec& task, const RowExample& row) {
  // Recursive boolean evaluation, independent of templates::Execute.
  struct Eval {
    const Rule& rule;
    const TaskSpec& task;
    const RowExample& row;
    bool operator()(const templates::TreeNode& n) const {
      if (n.is_leaf()) {
        const auto& p = rule.predicates.at(static_cast<std::size_t>(n.leaf - 1));
        return row.values.at(task.ColumnIndex(p.column)) == p.value;
      }
      const bool is_and = n.op == templates::LogicOp::kAnd;
      for (const auto& c : n.children) {
        if ((*this)(c) != is_and) return !is_and;
      }
      return is_and;
    }
  };
  return Eval{rule, task, row}(rule.tmpl.root());
}

std::pair<std::vector<TaskSpec>, std::vector<TaskSpec>> SplitSeenUnseen(
    std::vector<TaskSpec> tasks, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("split fraction must lie in (0, 1)");
  }
  const std::size_t n = tasks.size();
  if (n < 2) throw InvalidArgument("splitting needs at least 2 tasks");
  auto seen_count = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  seen_count = std::clamp<std::size_t>(seen_count, 1, n - 1);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng = MakeRng(seed, Stream::kData, HashName("split"));
  Shuffle(order, rng);
  std::vector<bool> is_seen(n, false);
  for (std::size_t i = 0; i < seen_count; ++i) is_seen[order[i]] = true;

  std::vector<TaskSpec> seen, unseen;
  for (std::size_t i = 0; i < n; ++i) {
    TaskSpec& t = tasks[i];
    t.split = is_seen[i] ? Split::kSeen : Split::kUnseen;
    (is_seen[i] ? seen : unseen).push_back(std::move(t));
  }
  return {std::move(seen), std::move(unseen)};
}

}  // namespace clore::corpus
