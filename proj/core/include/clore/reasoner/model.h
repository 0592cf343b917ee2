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

// Everything needed to classify: vocabulary, encoder, parser, and the two
// scalar temperatures.

#ifndef CLORE_REASONER_MODEL_H_
#define CLORE_REASONER_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "clore/diffmath/parameter.h"
#include "clore/encoder/embedding.h"
#include "clore/encoder/vocabulary.h"
#include "clore/parser/parser.h"

namespace clore::reasoner {

enum class Variant {
  // Template mixture with certainty scaling.
  kFull,
  // Unweighted sum of attribute match scores.
  kPlain,
  // sigma(tau * cos(explanation sentence, input sentence)).
  kSim,
};

std::string_view VariantName(Variant v);
// Accepts full, plain, sim and sim-baseline. Throws InvalidArgument.
Variant ParseVariant(std::string_view name);

struct ModelConfig {
  std::size_t dim = encoder::kDefaultDim;
  int t_max = parser::kDefaultMaxAttributes;
  Variant variant = Variant::kFull;
  double tau_init = 5.0;
  double beta_init = 5.0;
  std::size_t max_tokens = encoder::kMaxTokens;
};

// softplus^-1(y), for parameterizing positive scalars.
double InverseSoftplus(double y);

struct Model {
  ModelConfig config;
  encoder::Vocabulary vocab;
  encoder::EncoderParams encoder;
  parser::ParserParams parser;
  // tau = softplus(tau_raw) squashes cosine matches; beta = softplus(beta_raw)
  // scales class scores into logits.
  diff::Parameter tau_raw;
  diff::Parameter beta_raw;

  double tau() const;
  double beta() const;

  // Every trainable tensor, in a fixed order.
  std::vector<diff::Parameter*> Parameters();
  std::vector<const diff::Parameter*> Parameters() const;

  static Model Init(const ModelConfig& config, encoder::Vocabulary vocab,
                    std::uint64_t seed);
};

}  // namespace clore::reasoner

#endif  // CLORE_REASONER_MODEL_H_
