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

#include "clore/corpus/text.h"

#include "clore/error.h"

namespace clore::corpus {

std::string SerializeRow(std::span<const std::string> columns,
                         std::span<const std::string> values,
                         std::string_view joiner, std::string_view separator) {
  if (columns.size() != values.size()) {
    throw InvalidArgument("serialize_row: " + std::to_string(columns.size()) +
                          " columns but " + std::to_string(values.size()) +
                          " values");
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) {
      out += ' ';
      out += separator;
      out += ' ';
    }
    out += columns[i];
    out += ' ';
    out += joiner;
    out += ' ';
    out += values[i];
  }
  return out;
}

std::string_view PerturbationName(PerturbationMode mode) {
  switch (mode) {
    case PerturbationMode::kNone:
      return "none";
    case PerturbationMode::kPunctuated:
      return "punctuated";
    case PerturbationMode::kHinted:
      return "hinted";
    case PerturbationMode::kVerbose:
      return "verbose";
  }
  return "none";
}

PerturbationMode ParsePerturbation(std::string_view name) {
  for (auto mode : {PerturbationMode::kNone, PerturbationMode::kPunctuated,
                    PerturbationMode::kHinted, PerturbationMode::kVerbose}) {
    if (name == PerturbationName(mode)) return mode;
  }
  throw InvalidArgument("unknown perturbation mode '" + std::string(name) +
                        "' (expected none, punctuated, hinted or verbose)");
}

std::string Perturb(std::string_view text, PerturbationMode mode,
                    const PerturbationConfig& config) {
  std::string out(text);
  switch (mode) {
    case PerturbationMode::kNone:
      break;
    case PerturbationMode::kPunctuated:
      out += ' ';
      out += config.punctuation;
      break;
    case PerturbationMode::kHinted: {
      std::string replaced;
      for (char c : out) {
        if (c == kDefaultJoiner[0]) {
          replaced += kHintedJoiner;
        } else {
          replaced += c;
        }
      }
      out = std::move(replaced);
      break;
    }
    case PerturbationMode::kVerbose:
      out += ' ';
      out += kVerboseSentence;
      break;
  }
  return out;
}

}  // namespace clore::corpus
