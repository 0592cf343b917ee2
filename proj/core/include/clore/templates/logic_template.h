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

// AND/OR logical structure templates.
//
// A template is a tree whose internal nodes are AND or OR and whose leaves
// are attribute slots 1..k, each used exactly once and numbered left to
// right. Associative chains are stored flattened (an AND node never has an
// AND child), so a1 ∧ a2 ∧ a3 is one node with three children. Executing a
// flattened node with min/max gives the same value as any binary nesting.
//
// The enumeration treats templates as shapes: two trees that differ only by
// reordering commutative children, or by regrouping associative chains, are
// the same template. Attribute t is always bound to leaf t.

#ifndef CLORE_TEMPLATES_LOGIC_TEMPLATE_H_
#define CLORE_TEMPLATES_LOGIC_TEMPLATE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clore::templates {

enum class LogicOp { kAnd, kOr };

struct TreeNode {
  // Leaf when children is empty; `leaf` is then the 1-based slot.
  int leaf = 0;
  LogicOp op = LogicOp::kAnd;
  std::vector<TreeNode> children;

  bool is_leaf() const { return children.empty(); }
  int leaf_count() const;
  bool operator==(const TreeNode&) const = default;
};

class LogicTemplate {
 public:
  // Single-attribute template a1.
  LogicTemplate();
  // Validates slots (1..k, left to right) and flattens associative chains.
  explicit LogicTemplate(TreeNode root);

  int arity() const { return arity_; }
  const TreeNode& root() const { return root_; }

  // Postfix text, e.g. "a1 a2 ∧ a3 ∨". Enumeration order is (arity, key).
  std::string key() const;
  // Infix with minimal parentheses, e.g. "(a1 ∧ a2) ∨ a3".
  std::string compact() const;

  bool operator==(const LogicTemplate& o) const { return root_ == o.root_; }

 private:
  TreeNode root_;
  int arity_ = 1;
};

inline constexpr int kMaxTemplateAttributes = 4;

// All templates with 1..t_max leaves, deduplicated under associativity and
// commutativity, ordered by (arity, key). t_max must be in [1, 4].
std::vector<LogicTemplate> EnumerateTemplates(int t_max);

// Bottom-up evaluation: AND -> min, OR -> max. Extra scores beyond the arity
// are ignored. Scores must lie in [0, 1].
double Execute(const LogicTemplate& t, std::span<const double> leaf_scores);

// "label(X) = attr₁(X) ∧ attr₂(X)" style rendering with the given labels
// (labels.size() >= arity).
std::string Render(const LogicTemplate& t,
                   std::span<const std::string> attribute_labels);
// Rendering with the default labels attr₁, attr₂, ...
std::string Render(const LogicTemplate& t);

// Parses rendered or compact text. Accepts ∧ & AND and, ∨ | OR or, an
// optional "label(X) =" prefix, and atoms like a1, attr₂(X) or any
// identifier with an optional "(X)". Leaves are numbered in order of
// appearance. Mixing AND and OR without parentheses is rejected.
LogicTemplate ParseTemplate(std::string_view text);

// Index of `t` in `list`, if present.
std::optional<std::size_t> FindTemplate(std::span<const LogicTemplate> list,
                                        const LogicTemplate& t);

}  // namespace clore::templates

#endif  // CLORE_TEMPLATES_LOGIC_TEMPLATE_H_
