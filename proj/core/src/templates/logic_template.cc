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

#include "clore/templates/logic_template.h"

#include <algorithm>
#include <cctype>

#include "clore/error.h"

namespace clore::templates {
namespace {

constexpr const char* kAndSymbol = "∧";
constexpr const char* kOrSymbol = "∨";

const char* Symbol(LogicOp op) { return op == LogicOp::kAnd ? kAndSymbol : kOrSymbol; }

LogicOp Other(LogicOp op) {
  return op == LogicOp::kAnd ? LogicOp::kOr : LogicOp::kAnd;
}

TreeNode Flatten(TreeNode n) {
  if (n.is_leaf()) return n;
  TreeNode out;
  out.op = n.op;
  for (TreeNode& c : n.children) {
    TreeNode fc = Flatten(std::move(c));
    if (!fc.is_leaf() && fc.op == n.op) {
      for (TreeNode& g : fc.children) out.children.push_back(std::move(g));
    } else {
      out.children.push_back(std::move(fc));
    }
  }
  return out;
}

void CollectLeaves(const TreeNode& n, std::vector<int>& out) {
  if (n.is_leaf()) {
    out.push_back(n.leaf);
    return;
  }
  for (const TreeNode& c : n.children) CollectLeaves(c, out);
}

void CheckStructure(const TreeNode& n) {
  if (n.is_leaf()) return;
  if (n.children.size() < 2) {
    throw InvalidArgument("logic node needs at least two children");
  }
  for (const TreeNode& c : n.children) CheckStructure(c);
}

std::string PostfixKey(const TreeNode& n, bool with_slots) {
  if (n.is_leaf()) return with_slots ? "a" + std::to_string(n.leaf) : "a";
  std::string s;
  for (const TreeNode& c : n.children) {
    if (!s.empty()) s += ' ';
    s += PostfixKey(c, with_slots);
  }
  for (std::size_t i = 1; i < n.children.size(); ++i) {
    s += ' ';
    s += Symbol(n.op);
  }
  return s;
}

template <typename LeafFn>
std::string Infix(const TreeNode& n, const LeafFn& leaf) {
  if (n.is_leaf()) return leaf(n.leaf);
  std::string s;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i > 0) {
      s += ' ';
      s += Symbol(n.op);
      s += ' ';
    }
    const TreeNode& c = n.children[i];
    s += c.is_leaf() ? Infix(c, leaf) : "(" + Infix(c, leaf) + ")";
  }
  return s;
}

// Canonical child order: more leaves first, then by unlabeled shape key.
bool ChildBefore(const TreeNode& a, const TreeNode& b) {
  const int la = a.leaf_count();
  const int lb = b.leaf_count();
  if (la != lb) return la > lb;
  return PostfixKey(a, false) < PostfixKey(b, false);
}

// Unlabeled shapes with n >= 2 leaves and the given root operator.
std::vector<TreeNode> Shapes(int n, LogicOp op);

// Child options for a part of size s under a parent with operator op.
std::vector<TreeNode> Options(int s, LogicOp parent_op) {
  if (s == 1) return {TreeNode{}};
  return Shapes(s, Other(parent_op));
}

void ExtendChildren(const std::vector<int>& parts, std::size_t i,
                    std::size_t min_option, LogicOp op,
                    std::vector<TreeNode>& current,
                    std::vector<TreeNode>& out) {
  if (i == parts.size()) {
    TreeNode node;
    node.op = op;
    node.children = current;
    std::stable_sort(node.children.begin(), node.children.end(), ChildBefore);
    out.push_back(std::move(node));
    return;
  }
  const std::vector<TreeNode> options = Options(parts[i], op);
  // Equal consecutive part sizes choose non-decreasing option indices, so
  // each multiset of children is produced once.
  const std::size_t start =
      (i > 0 && parts[i] == parts[i - 1]) ? min_option : 0;
  for (std::size_t k = start; k < options.size(); ++k) {
    current.push_back(options[k]);
    ExtendChildren(parts, i + 1, k, op, current, out);
    current.pop_back();
  }
}

// Partitions of n into at least two parts, non-increasing.
void Partitions(int n, int max_part, std::vector<int>& current,
                std::vector<std::vector<int>>& out) {
  if (n == 0) {
    if (current.size() >= 2) out.push_back(current);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    current.push_back(p);
    Partitions(n - p, p, current, out);
    current.pop_back();
  }
}

std::vector<TreeNode> Shapes(int n, LogicOp op) {
  std::vector<std::vector<int>> parts;
  std::vector<int> scratch;
  Partitions(n, n - 1, scratch, parts);
  std::vector<TreeNode> out;
  for (const auto& p : parts) {
    std::vector<TreeNode> current;
    ExtendChildren(p, 0, 0, op, current, out);
  }
  return out;
}

void NumberLeaves(TreeNode& n, int& next) {
  if (n.is_leaf()) {
    n.leaf = next++;
    return;
  }
  for (TreeNode& c : n.children) NumberLeaves(c, next);
}

std::string Subscript(int n) {
  static const char* kDigits[] = {"₀", "₁", "₂", "₃", "₄",
                                  "₅", "₆", "₇", "₈", "₉"};
  std::string digits = std::to_string(n);
  std::string s;
  for (char c : digits) s += kDigits[c - '0'];
  return s;
}

// Recursive-descent parser over UTF-8 text.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TreeNode Parse() {
    TreeNode n = Expr();
    Skip();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return n;
  }

 private:
  void Fail(const std::string& what) const {
    throw InvalidArgument("cannot parse template '" + std::string(text_) +
                          "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void Skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Consume(std::string_view s) {
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  bool ConsumeWord(std::string_view w) {
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && IsIdentByte(text_[end])) return false;
    pos_ = end;
    return true;
  }

  static bool IsIdentByte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
  }

  std::optional<LogicOp> Operator() {
    Skip();
    if (Consume(kAndSymbol) || Consume("&") || ConsumeWord("AND") ||
        ConsumeWord("and")) {
      return LogicOp::kAnd;
    }
    if (Consume(kOrSymbol) || Consume("|") || ConsumeWord("OR") ||
        ConsumeWord("or")) {
      return LogicOp::kOr;
    }
    return std::nullopt;
  }

  TreeNode Expr() {
    std::vector<TreeNode> items;
    items.push_back(Primary());
    std::optional<LogicOp> op;
    while (true) {
      const std::size_t save = pos_;
      auto next = Operator();
      if (!next) {
        pos_ = save;
        break;
      }
      if (op && *op != *next) {
        Fail("mixed AND/OR without parentheses");
      }
      op = next;
      items.push_back(Primary());
    }
    if (items.size() == 1) return items.front();
    TreeNode n;
    n.op = *op;
    n.children = std::move(items);
    return n;
  }

  TreeNode Primary() {
    Skip();
    if (Consume("(")) {
      TreeNode n = Expr();
      Skip();
      if (!Consume(")")) Fail("expected ')'");
      return n;
    }
    const std::size_t start = pos_;
    // UTF-8 operator symbols start with 0xE2 as well; stop before them.
    while (pos_ < text_.size() && IsIdentByte(text_[pos_]) &&
           text_.substr(pos_, 3) != kAndSymbol &&
           text_.substr(pos_, 3) != kOrSymbol) {
      ++pos_;
    }
    if (pos_ == start) Fail("expected attribute");
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word == "AND" || word == "and" || word == "OR" || word == "or") {
      Fail("operator where attribute expected");
    }
    // Optional argument list such as "(X)".
    const std::size_t save = pos_;
    Skip();
    if (Consume("(")) {
      Skip();
      const std::size_t arg = pos_;
      while (pos_ < text_.size() && IsIdentByte(text_[pos_])) ++pos_;
      Skip();
      if (pos_ == arg || !Consume(")")) pos_ = save;
    } else {
      pos_ = save;
    }
    TreeNode leaf;
    leaf.leaf = ++leaves_;
    return leaf;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int leaves_ = 0;
};

}  // namespace

int TreeNode::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const TreeNode& c : children) n += c.leaf_count();
  return n;
}

LogicTemplate::LogicTemplate() { root_.leaf = 1; }

LogicTemplate::LogicTemplate(TreeNode root) : root_(Flatten(std::move(root))) {
  CheckStructure(root_);
  std::vector<int> leaves;
  CollectLeaves(root_, leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] != static_cast<int>(i) + 1) {
      throw InvalidArgument(
          "template leaves must be slots 1..k in left-to-right order");
    }
  }
  arity_ = static_cast<int>(leaves.size());
}

std::string LogicTemplate::key() const { return PostfixKey(root_, true); }

std::string LogicTemplate::compact() const {
  return Infix(root_, [](int i) { return "a" + std::to_string(i); });
}

std::vector<LogicTemplate> EnumerateTemplates(int t_max) {
  if (t_max < 1 || t_max > kMaxTemplateAttributes) {
    throw InvalidArgument("template attribute count must be in [1, " +
                          std::to_string(kMaxTemplateAttributes) + "], got " +
                          std::to_string(t_max));
  }
  std::vector<LogicTemplate> out;
  out.emplace_back();
  for (int k = 2; k <= t_max; ++k) {
    for (LogicOp op : {LogicOp::kAnd, LogicOp::kOr}) {
      for (TreeNode& shape : Shapes(k, op)) {
        int next = 1;
        NumberLeaves(shape, next);
        out.emplace_back(std::move(shape));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LogicTemplate& a, const LogicTemplate& b) {
                     if (a.arity() != b.arity()) return a.arity() < b.arity();
                     return a.key() < b.key();
                   });
  return out;
}

namespace {

double ExecuteNode(const TreeNode& n, std::span<const double> s) {
  if (n.is_leaf()) return s[n.leaf - 1];
  double acc = ExecuteNode(n.children.front(), s);
  for (std::size_t i = 1; i < n.children.size(); ++i) {
    const double v = ExecuteNode(n.children[i], s);
    acc = n.op == LogicOp::kAnd ? std::min(acc, v) : std::max(acc, v);
  }
  return acc;
}

}  // namespace

double Execute(const LogicTemplate& t, std::span<const double> leaf_scores) {
  if (leaf_scores.size() < static_cast<std::size_t>(t.arity())) {
    throw InvalidArgument("template of arity " + std::to_string(t.arity()) +
                          " given " + std::to_string(leaf_scores.size()) +
                          " scores");
  }
  for (double s : leaf_scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw InvalidArgument("leaf score outside [0, 1]: " + std::to_string(s));
    }
  }
  return ExecuteNode(t.root(), leaf_scores);
}

std::string Render(const LogicTemplate& t,
                   std::span<const std::string> attribute_labels) {
  if (attribute_labels.size() < static_cast<std::size_t>(t.arity())) {
    throw InvalidArgument("not enough attribute labels to render template");
  }
  return "label(X) = " + Infix(t.root(), [&](int i) {
           return attribute_labels[i - 1] + "(X)";
         });
}

std::string Render(const LogicTemplate& t) {
  std::vector<std::string> labels;
  for (int i = 1; i <= t.arity(); ++i) labels.push_back("attr" + Subscript(i));
  return Render(t, labels);
}

LogicTemplate ParseTemplate(std::string_view text) {
  if (auto eq = text.find('='); eq != std::string_view::npos) {
    text = text.substr(eq + 1);
  }
  return LogicTemplate(Parser(text).Parse());
}

std::optional<std::size_t> FindTemplate(std::span<const LogicTemplate> list,
                                        const LogicTemplate& t) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == t) return i;
  }
  return std::nullopt;
}

}  // namespace clore::templates
