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

#ifndef CLORE_ENCODER_TOKENIZER_H_
#define CLORE_ENCODER_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace clore::encoder {

inline constexpr std::string_view kSepToken = "[SEP]";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kPadToken = "[PAD]";

// Lowercased whitespace split. The characters . , ? ! ' " ( ) : become tokens
// of their own; special tokens such as [SEP] are kept verbatim. Empty input
// yields a single [UNK].
std::vector<std::string> Tokenize(std::string_view text);

}  // namespace clore::encoder

#endif  // CLORE_ENCODER_TOKENIZER_H_
