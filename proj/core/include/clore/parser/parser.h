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

// Explanation parser.
//
// Starting from h = sentence vector, each of T steps attends over the
// explanation tokens with logits e_k = h' B x_k, takes the attention context
// as attribute w_t and feeds it to one shared GRU cell. The sentence vector
// also drives a template head (softmax over the enumerated templates) and a
// certainty head (softplus, strictly positive).

#ifndef CLORE_PARSER_PARSER_H_
#define CLORE_PARSER_PARSER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/diffmath/parameter.h"
#include "clore/diffmath/tape.h"
#include "clore/encoder/embedding.h"
#include "clore/encoder/vocabulary.h"
#include "clore/templates/logic_template.h"

namespace clore::parser {

inline constexpr int kDefaultMaxAttributes = 3;
inline constexpr double kCertaintyFloor = 1e-6;

struct ParserParams {
  int t_max = kDefaultMaxAttributes;
  std::vector<templates::LogicTemplate> templates;

  // GRU gates over [context; hidden]: d x 2d matrices, d biases.
  diff::Parameter gru_wz, gru_wr, gru_wh, gru_bz, gru_br, gru_bh;
  // Bilinear attention scorer, d x d.
  diff::Parameter attention;
  // Template head d -> d -> |templates|, tanh hidden.
  diff::Parameter tmpl_w1, tmpl_b1, tmpl_w2, tmpl_b2;
  // Certainty head d -> d -> 1, tanh hidden.
  diff::Parameter cert_w1, cert_b1, cert_w2, cert_b2;

  std::size_t dim() const { return gru_bz.value.shape().rows; }
  std::vector<diff::Parameter*> All();
};

// Output layers of both heads start at zero weight, so p starts uniform; the
// certainty bias starts at softplus^-1(1 - 1e-6), so c starts at 1.
ParserParams InitParser(std::size_t dim, int t_max, std::uint64_t seed);

struct ParsedVars {
  encoder::EncodedVars encoded;
  std::vector<diff::Var> attributes;  // w_t, d each
  std::vector<diff::Var> attention;   // alpha_t, K each
  diff::Var templates;                // p
  diff::Var certainty;                // c, scalar
};

// `ids` must be nonempty.
ParsedVars ParseOnTape(diff::Tape& tape, const encoder::EncoderParams& enc,
                       const ParserParams& params,
                       std::span<const std::size_t> ids);

struct ParsedExplanation {
  std::string class_id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> attributes;  // w_1..w_T
  std::vector<std::vector<double>> attention;   // alpha_1..alpha_T
  std::vector<double> templates;                // p
  double certainty = 0.0;

  // Index of the most probable template, lowest on ties.
  std::size_t best_template() const;
};

// Reads concrete values of a parse built on `tape`.
ParsedExplanation ReadParsed(const diff::Tape& tape, const ParsedVars& vars,
                             std::vector<std::string> tokens);

ParsedExplanation Parse(const corpus::ExplanationRecord& explanation,
                        const encoder::Vocabulary& vocab,
                        const encoder::EncoderParams& enc,
                        const ParserParams& params,
                        std::size_t max_tokens = encoder::kMaxTokens);

struct TokenWeight {
  std::string token;
  std::size_t position = 0;
  double weight = 0.0;
};

// Up to k highest-attention tokens of attribute t, ties by position.
std::vector<TokenWeight> TopAttention(const ParsedExplanation& parsed,
                                      std::size_t t, std::size_t k = 5);

// Best template rendered with each slot labeled by its top attention token,
// e.g. "label(X) = pungent(X) ∧ red(X)".
std::string RenderParse(const ParsedExplanation& parsed,
                        std::span<const templates::LogicTemplate> list);

// One JSON object (single line) per explanation: class, text, rendered
// template, template probabilities, per-attribute top-5 tokens, certainty.
std::string RationaleJson(const ParsedExplanation& parsed,
                          std::span<const templates::LogicTemplate> list);

}  // namespace clore::parser

#endif  // CLORE_PARSER_PARSER_H_
