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

// Differentiable reasoning over parsed explanations.
//
// For attribute w_t and input tokens X: m_t = sigma(tau * max_k cos(x_k, w_t)).
// Each template is executed bottom-up on (m_1..m_T) with AND = min and
// OR = max, giving s; s_expl = p's and s_scaled =
// sigma(c * logit(clamp(s_expl))). A class scores the max s_scaled over its
// explanations, and the predicted class is the argmax over classes. Ties go
// to the lowest index everywhere.

#ifndef CLORE_REASONER_REASONER_H_
#define CLORE_REASONER_REASONER_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/corpus/text.h"
#include "clore/diffmath/tape.h"
#include "clore/encoder/embedding.h"
#include "clore/parser/parser.h"
#include "clore/reasoner/model.h"
#include "clore/templates/logic_template.h"

namespace clore::reasoner {

struct MatchVars {
  diff::Var cosines;  // K
  diff::Var raw;      // max_k cosine
  diff::Var score;    // m_t
};

MatchVars MatchOnTape(diff::Tape& tape, diff::Var tokens, diff::Var w,
                      diff::Var tau);

// Min/max execution of `t` over the first arity() leaf scores.
diff::Var ExecuteOnTape(diff::Tape& tape, const templates::LogicTemplate& t,
                        std::span<const diff::Var> leaf_scores);

struct ExplanationVars {
  std::vector<MatchVars> matches;  // empty for kSim
  diff::Var template_scores;       // s; kFull only
  diff::Var mixture;               // s_expl for kFull
  diff::Var score;                 // s_scaled for kFull
};

ExplanationVars ScoreExplanationOnTape(
    diff::Tape& tape, Variant variant, const parser::ParsedVars& parsed,
    const encoder::EncodedVars& input, diff::Var tau,
    std::span<const templates::LogicTemplate> list);

// Builds parse nodes for explanation `index` of the task on `tape`.
using ParseBuilder =
    std::function<parser::ParsedVars(diff::Tape& tape, std::size_t index)>;

// The parsed explanations of one task, shared by every row scored on the
// same tape.
class TaskGraph {
 public:
  // Parses with the model. Throws InvalidArgument if a class has no
  // explanation.
  TaskGraph(diff::Tape& tape, const Model& model, const corpus::TaskSpec& task);
  // Uses externally built parses, e.g. injected ground truth.
  TaskGraph(diff::Tape& tape, const Model& model, const corpus::TaskSpec& task,
            const ParseBuilder& builder);

  struct RowVars {
    encoder::EncodedVars input;
    std::vector<std::string> tokens;
    // Per class, per explanation of that class.
    std::vector<std::vector<ExplanationVars>> explanations;
    std::vector<diff::Var> class_scores;
    diff::Var scores;  // all class scores as one vector
  };

  RowVars ScoreText(std::string_view serialized) const;
  // beta * class scores.
  diff::Var Logits(const RowVars& row) const;

  const corpus::TaskSpec& task() const { return task_; }
  const Model& model() const { return model_; }
  const parser::ParsedVars& parsed(std::size_t explanation) const {
    return parsed_.at(explanation);
  }
  // Task explanation indices of class k, in task order.
  const std::vector<std::size_t>& members(std::size_t k) const {
    return members_.at(k);
  }
  diff::Tape& tape() const { return tape_; }

 private:
  void Init(const ParseBuilder& builder);

  diff::Tape& tape_;
  const Model& model_;
  const corpus::TaskSpec& task_;
  std::vector<parser::ParsedVars> parsed_;
  std::vector<std::vector<std::size_t>> members_;
  diff::Var tau_;
  diff::Var beta_;
};

struct AttributeTrace {
  double match = 0.0;   // m_t
  double cosine = 0.0;  // max_k cos(x_k, w_t)
  std::size_t position = 0;
  std::string input_token;
  // Top explanation tokens by attention.
  std::vector<parser::TokenWeight> top;
};

struct RationaleTrace {
  std::string class_id;
  std::size_t explanation = 0;  // index into task.explanations
  std::vector<AttributeTrace> attributes;
  std::vector<double> template_probs;   // p; kFull only
  std::vector<double> template_scores;  // s; kFull only
  double certainty = 0.0;               // kFull only
  double s_expl = 0.0;
  double s_scaled = 0.0;
  std::string rendered_template;
};

struct Classification {
  std::size_t predicted = 0;
  std::string label;
  std::vector<double> class_scores;
  // Winning explanation (task index) per class.
  std::vector<std::size_t> winners;
  // Trace of the predicted class's winning explanation.
  RationaleTrace trace;
};

// Classifies rows of one task, parsing its explanations once.
class Classifier {
 public:
  Classifier(const Model& model, const corpus::TaskSpec& task);
  Classifier(const Model& model, const corpus::TaskSpec& task,
             const ParseBuilder& builder);

  Classification Classify(
      const corpus::RowExample& row,
      corpus::PerturbationMode mode = corpus::PerturbationMode::kNone,
      const corpus::PerturbationConfig& config = {});
  Classification ClassifyText(std::string_view serialized);

  // Trace of one explanation against the most recently classified row.
  RationaleTrace TraceOf(std::size_t class_index, std::size_t member) const;

 private:
  diff::Tape tape_;
  TaskGraph graph_;
  // Tape size after the explanation graph; rows are scored past this point.
  std::size_t base_ = 0;
  TaskGraph::RowVars last_;
};

// Convenience wrapper building a fresh Classifier.
Classification Classify(const corpus::TaskSpec& task,
                        const corpus::RowExample& row, const Model& model);

// One single-line JSON record: class scores, winner per class, and the
// winning explanation's per-attribute links into the input.
std::string TraceJson(const corpus::TaskSpec& task, std::size_t row_index,
                      const Classification& c);

}  // namespace clore::reasoner

#endif  // CLORE_REASONER_REASONER_H_
