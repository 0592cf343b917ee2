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

#include "clore/reasoner/reasoner.h"

#include <algorithm>

#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "json.hpp"

namespace clore::reasoner {

using diff::Tape;
using diff::Var;

namespace {

// First index of the maximum.
std::size_t ArgMax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) -
                                  v.begin());
}

}  // namespace

MatchVars MatchOnTape(Tape& tape, Var tokens, Var w, Var tau) {
  MatchVars out;
  out.cosines = tape.CosineRows(tokens, w);
  out.raw = tape.ReduceMax(out.cosines);
  out.score = tape.Sigmoid(tape.Mul(tau, out.raw));
  return out;
}

namespace {

Var ExecuteNode(Tape& tape, const templates::TreeNode& n,
                std::span<const Var> leaves) {
  if (n.is_leaf()) return leaves[static_cast<std::size_t>(n.leaf - 1)];
  std::vector<Var> kids;
  for (const auto& c : n.children) kids.push_back(ExecuteNode(tape, c, leaves));
  const Var stacked = tape.Concat(kids);
  return n.op == templates::LogicOp::kAnd ? tape.ReduceMin(stacked)
                                          : tape.ReduceMax(stacked);
}

}  // namespace

Var ExecuteOnTape(Tape& tape, const templates::LogicTemplate& t,
                  std::span<const Var> leaf_scores) {
  if (leaf_scores.size() < static_cast<std::size_t>(t.arity())) {
    throw InvalidArgument("template " + t.compact() + " needs " +
                          std::to_string(t.arity()) + " leaf scores");
  }
  return ExecuteNode(tape, t.root(), leaf_scores);
}

ExplanationVars ScoreExplanationOnTape(
    Tape& tape, Variant variant, const parser::ParsedVars& parsed,
    const encoder::EncodedVars& input, Var tau,
    std::span<const templates::LogicTemplate> list) {
  ExplanationVars out;
  if (variant == Variant::kSim) {
    out.mixture = tape.Sigmoid(
        tape.Mul(tau, tape.Cosine(parsed.encoded.sentence, input.sentence)));
    out.score = out.mixture;
    return out;
  }
  std::vector<Var> m;
  for (const Var w : parsed.attributes) {
    out.matches.push_back(MatchOnTape(tape, input.tokens, w, tau));
    m.push_back(out.matches.back().score);
  }
  if (variant == Variant::kPlain) {
    out.mixture = tape.Sum(tape.Concat(m));
    out.score = out.mixture;
    return out;
  }
  std::vector<Var> s;
  for (const auto& t : list) s.push_back(ExecuteOnTape(tape, t, m));
  out.template_scores = tape.Concat(s);
  out.mixture = tape.Dot(parsed.templates, out.template_scores);
  out.score = tape.Sigmoid(tape.Mul(parsed.certainty, tape.Logit(out.mixture)));
  return out;
}

TaskGraph::TaskGraph(Tape& tape, const Model& model,
                     const corpus::TaskSpec& task)
    : tape_(tape), model_(model), task_(task) {
  Init([this](Tape& t, std::size_t i) {
    auto tokens = encoder::Tokenize(task_.explanations[i].text);
    return parser::ParseOnTape(
        t, model_.encoder, model_.parser,
        model_.vocab.Ids(tokens, model_.config.max_tokens));
  });
}

TaskGraph::TaskGraph(Tape& tape, const Model& model,
                     const corpus::TaskSpec& task, const ParseBuilder& builder)
    : tape_(tape), model_(model), task_(task) {
  Init(builder);
}

void TaskGraph::Init(const ParseBuilder& builder) {
  members_.assign(task_.classes.size(), {});
  for (std::size_t i = 0; i < task_.explanations.size(); ++i) {
    members_[task_.ClassIndex(task_.explanations[i].class_id)].push_back(i);
  }
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (members_[k].empty()) {
      throw InvalidArgument("task '" + task_.task_id + "': class '" +
                            task_.classes[k] + "' has no explanation");
    }
  }
  for (std::size_t i = 0; i < task_.explanations.size(); ++i) {
    parsed_.push_back(builder(tape_, i));
  }
  tau_ = tape_.Softplus(tape_.Param(model_.tau_raw));
  beta_ = tape_.Softplus(tape_.Param(model_.beta_raw));
}

TaskGraph::RowVars TaskGraph::ScoreText(std::string_view serialized) const {
  RowVars row;
  row.tokens = encoder::Tokenize(serialized);
  if (row.tokens.size() > model_.config.max_tokens) {
    row.tokens.resize(model_.config.max_tokens);
  }
  row.input = encoder::EncodeOnTape(
      tape_, model_.encoder, model_.vocab.Ids(row.tokens, model_.config.max_tokens));
  for (const auto& ids : members_) {
    std::vector<ExplanationVars> ev;
    std::vector<Var> scores;
    for (const std::size_t i : ids) {
      ev.push_back(ScoreExplanationOnTape(tape_, model_.config.variant,
                                          parsed_[i], row.input, tau_,
                                          model_.parser.templates));
      scores.push_back(ev.back().score);
    }
    row.class_scores.push_back(tape_.ReduceMax(tape_.Concat(scores)));
    row.explanations.push_back(std::move(ev));
  }
  row.scores = tape_.Concat(row.class_scores);
  return row;
}

Var TaskGraph::Logits(const RowVars& row) const {
  return tape_.Scale(row.scores, beta_);
}

Classifier::Classifier(const Model& model, const corpus::TaskSpec& task)
    : graph_(tape_, model, task), base_(tape_.size()) {}

Classifier::Classifier(const Model& model, const corpus::TaskSpec& task,
                       const ParseBuilder& builder)
    : graph_(tape_, model, task, builder), base_(tape_.size()) {}

Classification Classifier::Classify(const corpus::RowExample& row,
                                    corpus::PerturbationMode mode,
                                    const corpus::PerturbationConfig& config) {
  const auto& task = graph_.task();
  return ClassifyText(
      corpus::Perturb(corpus::SerializeRow(task.columns, row.values), mode, config));
}

Classification Classifier::ClassifyText(std::string_view serialized) {
  tape_.Truncate(base_);
  last_ = graph_.ScoreText(serialized);
  Classification out;
  out.class_scores = tape_.value(last_.scores).vec();
  out.predicted = ArgMax(out.class_scores);
  out.label = graph_.task().classes[out.predicted];
  for (std::size_t k = 0; k < last_.explanations.size(); ++k) {
    std::vector<double> s;
    for (const auto& ev : last_.explanations[k]) {
      s.push_back(tape_.value(ev.score).scalar());
    }
    out.winners.push_back(graph_.members(k)[ArgMax(s)]);
  }
  const auto& members = graph_.members(out.predicted);
  const std::size_t win = out.winners[out.predicted];
  out.trace = TraceOf(out.predicted, static_cast<std::size_t>(
                                         std::find(members.begin(), members.end(), win) -
                                         members.begin()));
  return out;
}

RationaleTrace Classifier::TraceOf(std::size_t class_index,
                                   std::size_t member) const {
  const auto& task = graph_.task();
  const Model& model = graph_.model();
  const std::size_t index = graph_.members(class_index).at(member);
  const ExplanationVars& ev = last_.explanations.at(class_index).at(member);
  const parser::ParsedVars& pv = graph_.parsed(index);

  RationaleTrace tr;
  tr.class_id = task.classes[class_index];
  tr.explanation = index;
  tr.s_expl = tape_.value(ev.mixture).scalar();
  tr.s_scaled = tape_.value(ev.score).scalar();

  parser::ParsedExplanation parsed;
  parsed.tokens = encoder::Tokenize(task.explanations[index].text);
  if (parsed.tokens.size() > model.config.max_tokens) {
    parsed.tokens.resize(model.config.max_tokens);
  }
  for (const Var a : pv.attention) parsed.attention.push_back(tape_.value(a).vec());
  for (std::size_t t = 0; t < ev.matches.size(); ++t) {
    const MatchVars& mv = ev.matches[t];
    AttributeTrace at;
    at.match = tape_.value(mv.score).scalar();
    at.cosine = tape_.value(mv.raw).scalar();
    at.position = tape_.selected(mv.raw);
    at.input_token = last_.tokens.at(at.position);
    if (parsed.attention.size() > t && parsed.attention[t].size() == parsed.tokens.size()) {
      at.top = parser::TopAttention(parsed, t);
    }
    tr.attributes.push_back(std::move(at));
  }
  if (model.config.variant == Variant::kFull) {
    tr.template_probs = tape_.value(pv.templates).vec();
    tr.template_scores = tape_.value(ev.template_scores).vec();
    tr.certainty = tape_.value(pv.certainty).scalar();
    parsed.templates = tr.template_probs;
    const auto& best = model.parser.templates[parsed.best_template()];
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < tr.attributes.size(); ++t) {
      labels.push_back(tr.attributes[t].top.empty() ? "attr" + std::to_string(t + 1)
                                                    : tr.attributes[t].top[0].token);
    }
    tr.rendered_template = templates::Render(best, labels);
  }
  return tr;
}

Classification Classify(const corpus::TaskSpec& task,
                        const corpus::RowExample& row, const Model& model) {
  Classifier c(model, task);
  return c.Classify(row);
}

std::string TraceJson(const corpus::TaskSpec& task, std::size_t row_index,
                      const Classification& c) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["task_id"] = task.task_id;
  j["row"] = row_index;
  j["predicted"] = c.label;
  if (row_index < task.rows.size()) j["gold"] = task.rows[row_index].label;
  Json scores = Json::object();
  Json winners = Json::object();
  for (std::size_t k = 0; k < task.classes.size(); ++k) {
    scores[task.classes[k]] = c.class_scores[k];
    winners[task.classes[k]] = c.winners[k];
  }
  j["class_scores"] = std::move(scores);
  j["winners"] = std::move(winners);
  const RationaleTrace& tr = c.trace;
  Json t;
  t["explanation"] = tr.explanation;
  t["text"] = task.explanations.at(tr.explanation).text;
  if (!tr.rendered_template.empty()) t["template"] = tr.rendered_template;
  Json attrs = Json::array();
  for (std::size_t i = 0; i < tr.attributes.size(); ++i) {
    const auto& a = tr.attributes[i];
    Json ja;
    ja["slot"] = i + 1;
    if (!a.top.empty()) {
      ja["top_token"] = a.top[0].token;
      ja["top_weight"] = a.top[0].weight;
    }
    ja["input_position"] = a.position;
    ja["input_token"] = a.input_token;
    ja["match"] = a.match;
    attrs.push_back(std::move(ja));
  }
  t["attributes"] = std::move(attrs);
  if (!tr.template_probs.empty()) {
    t["template_probs"] = tr.template_probs;
    t["template_scores"] = tr.template_scores;
    t["certainty"] = tr.certainty;
  }
  t["s_expl"] = tr.s_expl;
  t["s_scaled"] = tr.s_scaled;
  j["trace"] = std::move(t);
  return j.dump();
}

}  // namespace clore::reasoner
