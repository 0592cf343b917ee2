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

#include "clore/parser/parser.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "clore/rng.h"
#include "json.hpp"

namespace clore::parser {

using diff::Parameter;
using diff::Shape;
using diff::Tape;
using diff::Value;
using diff::Var;

namespace {

Parameter Gaussian(const std::string& name, Shape shape, double stddev,
                   Rng& rng) {
  Value v(shape);
  for (double& x : v.data()) x = Normal(rng, 0.0, stddev);
  return Parameter(name, std::move(v));
}

Parameter Zeros(const std::string& name, Shape shape) {
  return Parameter(name, Value(shape));
}

// Two-layer perceptron with tanh hidden layer.
Var Mlp(Tape& tape, Var x, const Parameter& w1, const Parameter& b1,
        const Parameter& w2, const Parameter& b2) {
  const Var hidden =
      tape.Tanh(tape.Add(tape.MatVec(tape.Param(w1), x), tape.Param(b1)));
  return tape.Add(tape.MatVec(tape.Param(w2), hidden), tape.Param(b2));
}

}  // namespace

std::vector<Parameter*> ParserParams::All() {
  return {&gru_wz,  &gru_wr,  &gru_wh,  &gru_bz,  &gru_br,  &gru_bh,
          &attention, &tmpl_w1, &tmpl_b1, &tmpl_w2, &tmpl_b2, &cert_w1,
          &cert_b1, &cert_w2, &cert_b2};
}

ParserParams InitParser(std::size_t dim, int t_max, std::uint64_t seed) {
  if (dim == 0) throw InvalidArgument("parser dim must be > 0");
  ParserParams p;
  p.t_max = t_max;
  p.templates = templates::EnumerateTemplates(t_max);
  Rng rng = MakeRng(seed, Stream::kInit, HashName("parser"));
  const double d = static_cast<double>(dim);
  const Shape gate{dim, 2 * dim}, square{dim, dim}, vec{dim, 1};
  p.gru_wz = Gaussian("parser.gru_wz", gate, 1.0 / std::sqrt(2 * d), rng);
  p.gru_wr = Gaussian("parser.gru_wr", gate, 1.0 / std::sqrt(2 * d), rng);
  p.gru_wh = Gaussian("parser.gru_wh", gate, 1.0 / std::sqrt(2 * d), rng);
  p.gru_bz = Zeros("parser.gru_bz", vec);
  p.gru_br = Zeros("parser.gru_br", vec);
  p.gru_bh = Zeros("parser.gru_bh", vec);
  p.attention = Gaussian("parser.attention", square, 1.0 / std::sqrt(d), rng);
  p.tmpl_w1 = Gaussian("parser.tmpl_w1", square, 1.0 / std::sqrt(d), rng);
  p.tmpl_b1 = Zeros("parser.tmpl_b1", vec);
  p.tmpl_w2 = Zeros("parser.tmpl_w2", Shape{p.templates.size(), dim});
  p.tmpl_b2 = Zeros("parser.tmpl_b2", Shape{p.templates.size(), 1});
  p.cert_w1 = Gaussian("parser.cert_w1", square, 1.0 / std::sqrt(d), rng);
  p.cert_b1 = Zeros("parser.cert_b1", vec);
  p.cert_w2 = Zeros("parser.cert_w2", Shape{1, dim});
  // softplus^-1(1 - floor) = log(exp(1 - floor) - 1).
  p.cert_b2 = Parameter("parser.cert_b2",
                        Value::Scalar(std::log(std::expm1(1.0 - kCertaintyFloor))));
  return p;
}

ParsedVars ParseOnTape(Tape& tape, const encoder::EncoderParams& enc,
                       const ParserParams& params,
                       std::span<const std::size_t> ids) {
  ParsedVars out;
  out.encoded = encoder::EncodeOnTape(tape, enc, ids);
  const Var x = out.encoded.tokens;
  const Var b = tape.Param(params.attention);
  Var h = out.encoded.sentence;
  for (int t = 0; t < params.t_max; ++t) {
    const Var logits = tape.MatVec(x, tape.MatVecT(b, h));
    const Var alpha = tape.Softmax(logits);
    const Var context = tape.MatVecT(x, alpha);
    out.attention.push_back(alpha);
    out.attributes.push_back(context);
    if (t + 1 < params.t_max) {
      h = tape.Gru(context, h, tape.Param(params.gru_wz),
                   tape.Param(params.gru_wr), tape.Param(params.gru_wh),
                   tape.Param(params.gru_bz), tape.Param(params.gru_br),
                   tape.Param(params.gru_bh));
    }
  }
  const Var s = out.encoded.sentence;
  out.templates = tape.Softmax(Mlp(tape, s, params.tmpl_w1, params.tmpl_b1,
                                   params.tmpl_w2, params.tmpl_b2));
  out.certainty = tape.Add(
      tape.Softplus(Mlp(tape, s, params.cert_w1, params.cert_b1,
                        params.cert_w2, params.cert_b2)),
      tape.Constant(kCertaintyFloor));
  return out;
}

std::size_t ParsedExplanation::best_template() const {
  return static_cast<std::size_t>(
      std::max_element(templates.begin(), templates.end()) - templates.begin());
}

ParsedExplanation ReadParsed(const Tape& tape, const ParsedVars& vars,
                             std::vector<std::string> tokens) {
  ParsedExplanation out;
  out.tokens = std::move(tokens);
  for (const Var w : vars.attributes) out.attributes.push_back(tape.value(w).vec());
  for (const Var a : vars.attention) out.attention.push_back(tape.value(a).vec());
  out.templates = tape.value(vars.templates).vec();
  out.certainty = tape.value(vars.certainty).scalar();
  return out;
}

ParsedExplanation Parse(const corpus::ExplanationRecord& explanation,
                        const encoder::Vocabulary& vocab,
                        const encoder::EncoderParams& enc,
                        const ParserParams& params, std::size_t max_tokens) {
  if (explanation.text.empty()) {
    throw InvalidArgument("cannot parse an empty explanation");
  }
  auto tokens = encoder::Tokenize(explanation.text);
  if (tokens.size() > max_tokens) tokens.resize(max_tokens);
  Tape tape;
  const ParsedVars vars = ParseOnTape(tape, enc, params, vocab.Ids(tokens, max_tokens));
  ParsedExplanation out = ReadParsed(tape, vars, std::move(tokens));
  out.class_id = explanation.class_id;
  out.text = explanation.text;
  return out;
}

std::vector<TokenWeight> TopAttention(const ParsedExplanation& parsed,
                                      std::size_t t, std::size_t k) {
  const auto& alpha = parsed.attention.at(t);
  std::vector<std::size_t> order(alpha.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return alpha[a] > alpha[b];
  });
  std::vector<TokenWeight> out;
  for (std::size_t i = 0; i < order.size() && i < k; ++i) {
    out.push_back({parsed.tokens.at(order[i]), order[i], alpha[order[i]]});
  }
  return out;
}

std::string RenderParse(const ParsedExplanation& parsed,
                        std::span<const templates::LogicTemplate> list) {
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < parsed.attention.size(); ++t) {
    labels.push_back(TopAttention(parsed, t, 1).at(0).token);
  }
  return templates::Render(list[parsed.best_template()], labels);
}

std::string RationaleJson(const ParsedExplanation& parsed,
                          std::span<const templates::LogicTemplate> list) {
  nlohmann::ordered_json j;
  j["class"] = parsed.class_id;
  j["text"] = parsed.text;
  const std::size_t best = parsed.best_template();
  j["template"] = list[best].compact();
  j["template_arity"] = list[best].arity();
  j["formula"] = RenderParse(parsed, list);
  nlohmann::ordered_json probs = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < list.size(); ++i) {
    probs[list[i].compact()] = parsed.templates[i];
  }
  j["template_probs"] = std::move(probs);
  nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < parsed.attention.size(); ++t) {
    nlohmann::ordered_json top = nlohmann::ordered_json::array();
    for (const auto& tw : TopAttention(parsed, t)) {
      top.push_back({{"token", tw.token},
                     {"position", tw.position},
                     {"weight", tw.weight}});
    }
    attrs.push_back({{"slot", t + 1}, {"top", std::move(top)}});
  }
  j["attributes"] = std::move(attrs);
  j["certainty"] = parsed.certainty;
  return j.dump();
}

}  // namespace clore::parser
