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

// Synthetic task suites with known ground-truth rules.
//
// Column and value words come from one shared lexicon, so tokens seen while
// training recur in unseen tasks under new combinations. Every class gets a
// rule; rows are labeled by the first class whose rule holds.

#ifndef CLORE_CORPUS_GENERATOR_H_
#define CLORE_CORPUS_GENERATOR_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clore/corpus/task.h"

namespace clore::corpus {

inline constexpr std::array<std::string_view, 7> kQuantifierWords = {
    "always", "usually", "often", "likely", "sometimes", "rarely", "never"};

enum class UncoveredRows {
  // Rows no rule covers are redrawn; every row is explained by some rule.
  kResample,
  // Rows no rule covers go to the last class.
  kDefaultClass,
};

enum class AmbiguousRows {
  // Rows that satisfy the rules of two or more classes are redrawn, so every
  // label is the only class whose explanations hold.
  kResample,
  // Such rows keep the first matching class.
  kFirstMatch,
};

struct GeneratorConfig {
  int num_tasks = 50;
  int classes_per_task = 3;
  int columns = 5;
  int values_per_column = 3;
  int rows_per_task = 60;
  // Expected fraction of classes with a 2-3 predicate rule. The per-task
  // count is ratio * classes, stochastically rounded.
  double compositional_ratio = 0.6;
  // Chance that an explanation carries a quantifier prefix.
  double quantifier_ratio = 0.2;
  // Operator mix: chance that a binary or flat operator is OR, and chance
  // that a compositional rule has 3 predicates rather than 2.
  double or_probability = 0.5;
  double three_predicate_probability = 0.5;
  int explanations_per_class = 2;
  int min_rows_per_class = 2;
  UncoveredRows uncovered_rows = UncoveredRows::kResample;
  AmbiguousRows ambiguous_rows = AmbiguousRows::kResample;
  int max_retries = 200;
  std::string task_prefix = "synthetic";

  // Throws InvalidArgument.
  void Validate() const;
};

// Task `index` of the suite; depends only on (config, seed, index).
TaskSpec GenerateSyntheticTask(const GeneratorConfig& config,
                               std::uint64_t seed, int index);

// Tasks 0..num_tasks-1, all tagged seen.
std::vector<TaskSpec> GenerateSyntheticSuite(const GeneratorConfig& config,
                                             std::uint64_t seed);

// English rendering of a rule for class `class_id`. `pattern` in [0, 4)
// selects the sentence frame. Returns the text and the token span of the
// first predicate phrase.
struct RenderedExplanation {
  std::string text;
  KeywordSpan span;
};
inline constexpr int kExplanationPatterns = 4;
RenderedExplanation RenderExplanation(const Rule& rule,
                                      std::string_view class_id, int pattern,
                                      std::string_view quantifier = {});

}  // namespace clore::corpus

#endif  // CLORE_CORPUS_GENERATOR_H_
