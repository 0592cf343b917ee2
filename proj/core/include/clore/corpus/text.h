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

// Row serialization and the linguistic-bias perturbations applied to it.

#ifndef CLORE_CORPUS_TEXT_H_
#define CLORE_CORPUS_TEXT_H_

#include <span>
#include <string>
#include <string_view>

namespace clore::corpus {

inline constexpr std::string_view kDefaultJoiner = "|";
inline constexpr std::string_view kDefaultSeparator = "[SEP]";
inline constexpr std::string_view kHintedJoiner = "is claimed to be";

// Exactly 30 whitespace-separated words.
inline constexpr std::string_view kVerboseSentence =
    "It is worth noting that the information listed above was collected "
    "from several sources over a long period of time and has been "
    "carefully reviewed by the team before publication.";

// "col1 | val1 [SEP] col2 | val2". Throws InvalidArgument on a length
// mismatch.
std::string SerializeRow(std::span<const std::string> columns,
                         std::span<const std::string> values,
                         std::string_view joiner = kDefaultJoiner,
                         std::string_view separator = kDefaultSeparator);

enum class PerturbationMode { kNone, kPunctuated, kHinted, kVerbose };

std::string_view PerturbationName(PerturbationMode mode);
// Accepts none, punctuated, hinted, verbose. Throws InvalidArgument.
PerturbationMode ParsePerturbation(std::string_view name);

struct PerturbationConfig {
  std::string punctuation = "?";
};

// Applied to serialized inputs only. kNone is the identity.
std::string Perturb(std::string_view text, PerturbationMode mode,
                    const PerturbationConfig& config = {});

}  // namespace clore::corpus

#endif  // CLORE_CORPUS_TEXT_H_
