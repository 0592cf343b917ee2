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

// Learned certainty per quantifier word against reference probabilities.

#ifndef CLORE_EVALHARNESS_QUANTIFIER_H_
#define CLORE_EVALHARNESS_QUANTIFIER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/evalharness/stats.h"
#include "clore/reasoner/model.h"

namespace clore::eval {

// word -> reference probability in [0, 1].
using QuantifierTable = std::map<std::string, double, std::less<>>;

// Lines of "word<TAB or comma>probability"; blank lines and lines starting
// with '#' are ignored. Throws FormatError naming the line.
QuantifierTable ParseQuantifierTable(std::string_view text,
                                     std::string_view source = "<quantifiers>");
QuantifierTable LoadQuantifierTable(const std::filesystem::path& path);

// The seven generator quantifiers.
std::vector<std::string> DefaultQuantifierWords();

// First token of `text` equal to one of `words` (exact, after tokenizing).
std::optional<std::string> DetectQuantifier(std::string_view text,
                                            std::span<const std::string> words);

struct QuantifierRow {
  std::string word;
  std::size_t count = 0;
  double mean_certainty = 0.0;
  std::optional<double> reference;
};

struct QuantifierReport {
  std::vector<QuantifierRow> rows;  // matched words, in word-list order
  // Over rows with a reference value.
  Correlation pearson;
};

QuantifierReport QuantifierAnalysis(const reasoner::Model& model,
                                    std::span<const corpus::TaskSpec> tasks,
                                    const QuantifierTable& reference,
                                    std::span<const std::string> words);

// "quantifier,count,mean_certainty,reference" rows.
std::string QuantifierCsv(const QuantifierReport& report);
std::string QuantifierSummary(const QuantifierReport& report);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_QUANTIFIER_H_
