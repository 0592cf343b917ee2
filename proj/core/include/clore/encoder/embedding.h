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

// Token embedding table and sentence pooling.
//
// x_k is the table row of token k; the sentence vector is
// tanh(W * mean(x_1..x_K) + b).

#ifndef CLORE_ENCODER_EMBEDDING_H_
#define CLORE_ENCODER_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clore/diffmath/parameter.h"
#include "clore/diffmath/tape.h"
#include "clore/encoder/vocabulary.h"

namespace clore::encoder {

inline constexpr std::size_t kDefaultDim = 64;
inline constexpr double kEmbeddingInitStddev = 0.02;

struct EncoderParams {
  diff::Parameter table;   // |V| x d
  diff::Parameter pool_w;  // d x d
  diff::Parameter pool_b;  // d

  std::size_t dim() const { return pool_b.value.shape().rows; }
  std::size_t vocab_size() const { return table.value.shape().rows; }
  std::vector<diff::Parameter*> All() { return {&table, &pool_w, &pool_b}; }
};

// Table rows ~ N(0, 0.02); pool_w ~ N(0, 1/sqrt(d)); pool_b = 0.
EncoderParams InitEncoder(std::size_t vocab_size, std::size_t dim,
                          std::uint64_t seed);

struct PretrainedCoverage {
  std::size_t file_rows = 0;
  // Vocabulary tokens initialized from the file.
  std::size_t covered = 0;
};

// Overwrites the rows of vocabulary tokens found in a `token<TAB>v1 ... vd`
// file, optionally freezing them. Other rows keep their initialization.
// Throws FormatError on a dimension mismatch or unparsable line.
PretrainedCoverage LoadPretrainedVectors(const std::filesystem::path& path,
                                         const Vocabulary& vocab,
                                         EncoderParams& params, bool freeze);
PretrainedCoverage LoadPretrainedVectorsFromText(std::string_view text,
                                                 const Vocabulary& vocab,
                                                 EncoderParams& params,
                                                 bool freeze);

// Token matrix and sentence vector of one text, as tape nodes.
struct EncodedVars {
  diff::Var tokens;    // K x d
  diff::Var sentence;  // d
  std::size_t length = 0;
};

// `ids` must be nonempty.
EncodedVars EncodeOnTape(diff::Tape& tape, const EncoderParams& params,
                         std::span<const std::size_t> ids);

// Concrete encoding, for inspection.
struct EncodedInput {
  std::string text;
  std::vector<std::string> tokens;  // after truncation
  diff::Value vectors;              // K x d
  diff::Value sentence;             // d
};

EncodedInput Encode(std::string_view text, const Vocabulary& vocab,
                    const EncoderParams& params,
                    std::size_t max_tokens = kMaxTokens);

}  // namespace clore::encoder

#endif  // CLORE_ENCODER_EMBEDDING_H_
