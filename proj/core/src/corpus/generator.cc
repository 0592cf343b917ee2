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

#include "clore/corpus/generator.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "clore/rng.h"

namespace clore::corpus {
namespace {

struct LexiconColumn {
  std::string_view name;
  std::array<std::string_view, 5> values;
};

// Value words are unique across the whole lexicon.
constexpr std::array<LexiconColumn, 16> kLexicon = {{
    {"color", {"red", "blue", "green", "yellow", "white"}},
    {"odor", {"pungent", "fishy", "floral", "musty", "sweet"}},
    {"shape", {"round", "square", "oval", "flat", "conical"}},
    {"size", {"tiny", "small", "medium", "large", "huge"}},
    {"texture", {"smooth", "rough", "scaly", "fuzzy", "sticky"}},
    {"habitat", {"forest", "desert", "meadow", "marsh", "urban"}},
    {"season", {"spring", "summer", "autumn", "winter", "monsoon"}},
    {"material", {"wood", "metal", "glass", "stone", "clay"}},
    {"taste", {"bitter", "salty", "sour", "spicy", "bland"}},
    {"sound", {"quiet", "loud", "shrill", "humming", "silent"}},
    {"pattern", {"striped", "spotted", "plain", "checkered", "dotted"}},
    {"weight", {"light", "heavy", "dense", "hollow", "bulky"}},
    {"temperature", {"cold", "warm", "hot", "frozen", "mild"}},
    {"origin", {"northern", "southern", "eastern", "western", "central"}},
    {"age", {"young", "mature", "old", "ancient", "fresh"}},
    {"ring-type", {"pendant", "flaring", "evanescent", "sheathing", "zone"}},
}};

constexpr std::array<std::string_view, 12> kClassNames = {
    "alpha", "beta",  "gamma",   "delta",  "epsilon", "zeta",
    "eta",   "theta", "iota",    "kappa",  "lambda",  "sigma"};

// Slots in the 3-attribute template list.
constexpr std::size_t kAnd2 = 1, kOr2 = 2, kAnd3 = 3, kOr3 = 4,
                      kAndThenOr = 5, kOrThenAnd = 6;

std::string Numbered(std::string_view stem, int i) {
  return std::string(stem) + std::to_string(i);
}

struct TaskLexicon {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> values;
};

TaskLexicon DrawLexicon(const GeneratorConfig& config, Rng& rng) {
  std::vector<std::size_t> pool(kLexicon.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  Shuffle(pool, rng);
  TaskLexicon lex;
  for (int c = 0; c < config.columns; ++c) {
    std::vector<std::string> vals;
    if (static_cast<std::size_t>(c) < pool.size()) {
      const auto& col = kLexicon[pool[static_cast<std::size_t>(c)]];
      lex.columns.emplace_back(col.name);
      std::vector<std::string> all(col.values.begin(), col.values.end());
      Shuffle(all, rng);
      for (int v = 0; v < config.values_per_column; ++v) {
        vals.push_back(static_cast<std::size_t>(v) < all.size()
                           ? all[static_cast<std::size_t>(v)]
                           : Numbered(lex.columns.back() + "-v", v));
      }
    } else {
      lex.columns.push_back(Numbered("attr", c));
      for (int v = 0; v < config.values_per_column; ++v) {
        vals.push_back(Numbered(lex.columns.back() + "-v", v));
      }
    }
    lex.values.push_back(std::move(vals));
  }
  return lex;
}

std::vector<std::string> DrawClasses(const GeneratorConfig& config, Rng& rng) {
  std::vector<std::string> names(kClassNames.begin(), kClassNames.end());
  Shuffle(names, rng);
  std::vector<std::string> out;
  for (int k = 0; k < config.classes_per_task; ++k) {
    out.push_back(static_cast<std::size_t>(k) < names.size()
                      ? names[static_cast<std::size_t>(k)]
                      : Numbered("class", k));
  }
  return out;
}

templates::LogicTemplate DrawTemplate(const GeneratorConfig& config,
                                      bool compositional, Rng& rng) {
  static const auto kTemplates = templates::EnumerateTemplates(3);
  if (!compositional) return kTemplates[0];
  const bool or_op = Bernoulli(rng, config.or_probability);
  if (!Bernoulli(rng, config.three_predicate_probability)) {
    return kTemplates[or_op ? kOr2 : kAnd2];
  }
  if (Bernoulli(rng, 0.5)) return kTemplates[or_op ? kOr3 : kAnd3];
  return kTemplates[or_op ? kAndThenOr : kOrThenAnd];
}

Rule DrawRule(const GeneratorConfig& config, const TaskLexicon& lex,
              bool compositional, Rng& rng) {
  Rule rule{DrawTemplate(config, compositional, rng), {}};
  std::vector<std::size_t> cols(lex.columns.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  Shuffle(cols, rng);
  for (int t = 0; t < rule.tmpl.arity(); ++t) {
    const std::size_t c = cols[static_cast<std::size_t>(t)];
    const auto& vals = lex.values[c];
    const auto v = static_cast<std::size_t>(
        UniformInt(rng, 0, static_cast<std::int64_t>(vals.size()) - 1));
    rule.predicates.push_back({lex.columns[c], vals[v]});
  }
  return rule;
}

// Index of the first class whose rule holds, or -1.
// First matching rule (-1 if none) and the number of matching rules.
std::pair<int, int> Matches(const std::vector<Rule>& rules, const TaskSpec& task,
                            const RowExample& row) {
  int first = -1, count = 0;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    if (!RuleHolds(rules[k], task, row)) continue;
    if (first < 0) first = static_cast<int>(k);
    ++count;
  }
  return {first, count};
}

std::string Phrase(const Predicate& p, bool value_first) {
  return value_first ? p.value + " " + p.column : p.column + " is " + p.value;
}

std::string Expression(const templates::TreeNode& n, const Rule& rule,
                       bool value_first, bool nested) {
  if (n.is_leaf()) {
    return Phrase(rule.predicates.at(static_cast<std::size_t>(n.leaf - 1)),
                  value_first);
  }
  const bool is_and = n.op == templates::LogicOp::kAnd;
  const std::string conj = is_and ? "and" : "or";
  bool has_internal = false;
  std::vector<std::string> parts;
  for (const auto& c : n.children) {
    has_internal = has_internal || !c.is_leaf();
    parts.push_back(Expression(c, rule, value_first, true));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      if (has_internal) {
        out += ", " + conj + " ";
      } else if (i + 1 == parts.size()) {
        out += " " + conj + " ";
      } else {
        out += ", ";
      }
    }
    out += parts[i];
  }
  if (nested) out = (is_and ? "both " : "either ") + out;
  return out;
}

std::size_t TokenCount(std::string_view text) {
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
  return blank ? 0 : encoder::Tokenize(text).size();
}

RowExample DrawRow(const TaskLexicon& lex, Rng& rng) {
  RowExample row;
  for (const auto& vals : lex.values) {
    row.values.push_back(vals[static_cast<std::size_t>(
        UniformInt(rng, 0, static_cast<std::int64_t>(vals.size()) - 1))]);
  }
  return row;
}

}  // namespace

void GeneratorConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("generator config: ") + what);
  };
  require(num_tasks >= 1, "num_tasks must be >= 1");
  require(classes_per_task >= 1, "classes_per_task must be >= 1");
  require(columns >= 1, "columns must be >= 1");
  require(values_per_column >= 2, "values_per_column must be >= 2");
  require(rows_per_task >= 1, "rows_per_task must be >= 1");
  require(compositional_ratio >= 0.0 && compositional_ratio <= 1.0,
          "compositional_ratio must lie in [0, 1]");
  require(quantifier_ratio >= 0.0 && quantifier_ratio <= 1.0,
          "quantifier_ratio must lie in [0, 1]");
  require(or_probability >= 0.0 && or_probability <= 1.0,
          "or_probability must lie in [0, 1]");
  require(three_predicate_probability >= 0.0 &&
              three_predicate_probability <= 1.0,
          "three_predicate_probability must lie in [0, 1]");
  require(explanations_per_class >= 1 &&
              explanations_per_class <= kExplanationPatterns,
          "explanations_per_class must lie in [1, 4]");
  require(min_rows_per_class >= 0, "min_rows_per_class must be >= 0");
  require(max_retries >= 1, "max_retries must be >= 1");
  require(compositional_ratio == 0.0 || columns >= 3 ||
              (columns >= 2 && three_predicate_probability == 0.0),
          "compositional rules need at least 3 columns");
}

RenderedExplanation RenderExplanation(const Rule& rule,
                                      std::string_view class_id, int pattern,
                                      std::string_view quantifier) {
  const bool value_first = pattern == 1 || pattern == 3;
  const std::string expr =
      Expression(rule.tmpl.root(), rule, value_first, false);
  const std::string c(class_id);
  std::string body;
  switch (pattern) {
    case 0:
      body = "if " + expr + ", then the label is " + c + ".";
      break;
    case 1:
      body = "items with " + expr + " are " + c + ".";
      break;
    case 2:
      body = "the label is " + c + " when " + expr + ".";
      break;
    case 3:
      body = c + " items have " + expr + ".";
      break;
    default:
      throw InvalidArgument("explanation pattern must lie in [0, 4)");
  }
  std::string text =
      quantifier.empty() ? body : std::string(quantifier) + ", " + body;
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));

  const std::string first = Phrase(rule.predicates.at(0), value_first);
  const std::size_t pos = text.find(first);
  RenderedExplanation out{std::move(text), {}};
  out.span.begin = TokenCount(std::string_view(out.text).substr(0, pos));
  out.span.end = out.span.begin + TokenCount(first);
  return out;
}

TaskSpec GenerateSyntheticTask(const GeneratorConfig& config,
                               std::uint64_t seed, int index) {
  config.Validate();
  Rng rng = MakeRng(seed, Stream::kData,
                    HashName(config.task_prefix) ^
                        static_cast<std::uint64_t>(index));
  char id[32];
  std::snprintf(id, sizeof id, "-%04d", index);

  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    TaskSpec task;
    task.task_id = config.task_prefix + id;
    const TaskLexicon lex = DrawLexicon(config, rng);
    task.columns = lex.columns;
    task.classes = DrawClasses(config, rng);
    const std::size_t k = task.classes.size();

    // Stochastic rounding of ratio * k.
    const double target = config.compositional_ratio * static_cast<double>(k);
    auto n_comp = static_cast<std::size_t>(std::floor(target));
    if (Bernoulli(rng, target - std::floor(target))) ++n_comp;
    std::vector<bool> comp(k, false);
    for (std::size_t i = 0; i < std::min(n_comp, k); ++i) comp[i] = true;
    Shuffle(comp, rng);

    std::vector<Rule> rules;
    for (std::size_t c = 0; c < k; ++c) {
      rules.push_back(DrawRule(config, lex, comp[c], rng));
    }

    const int max_draws = 1000 * config.rows_per_task;
    int draws = 0;
    std::vector<int> counts(k, 0);
    while (static_cast<int>(task.rows.size()) < config.rows_per_task &&
           draws < max_draws) {
      ++draws;
      RowExample row = DrawRow(lex, rng);
      auto [match, count] = Matches(rules, task, row);
      if (count > 1 && config.ambiguous_rows == AmbiguousRows::kResample) continue;
      if (match < 0) {
        if (config.uncovered_rows == UncoveredRows::kResample) continue;
        match = static_cast<int>(k) - 1;
      }
      row.label = task.classes[static_cast<std::size_t>(match)];
      ++counts[static_cast<std::size_t>(match)];
      task.rows.push_back(std::move(row));
    }
    if (static_cast<int>(task.rows.size()) < config.rows_per_task) continue;
    if (*std::min_element(counts.begin(), counts.end()) <
        config.min_rows_per_class) {
      continue;
    }

    for (std::size_t c = 0; c < k; ++c) {
      std::vector<int> patterns(kExplanationPatterns);
      for (int p = 0; p < kExplanationPatterns; ++p) patterns[p] = p;
      Shuffle(patterns, rng);
      for (int e = 0; e < config.explanations_per_class; ++e) {
        std::string quantifier;
        if (Bernoulli(rng, config.quantifier_ratio)) {
          quantifier = kQuantifierWords[static_cast<std::size_t>(UniformInt(
              rng, 0, static_cast<std::int64_t>(kQuantifierWords.size()) - 1))];
        }
        auto rendered = RenderExplanation(
            rules[c], task.classes[c], patterns[static_cast<std::size_t>(e)],
            quantifier);
        ExplanationRecord rec;
        rec.class_id = task.classes[c];
        rec.text = std::move(rendered.text);
        rec.keyword_span = rendered.span;
        if (!quantifier.empty()) rec.quantifier = quantifier;
        rec.rule = rules[c];
        rec.compositional = rules[c].tmpl.arity() >= 2;
        task.explanations.push_back(std::move(rec));
      }
    }
    task.Validate();
    return task;
  }
  throw InvalidArgument("generator: task " + std::to_string(index) +
                        " unsatisfiable after " +
                        std::to_string(config.max_retries) + " attempts");
}

std::vector<TaskSpec> GenerateSyntheticSuite(const GeneratorConfig& config,
                                             std::uint64_t seed) {
  config.Validate();
  std::vector<TaskSpec> out;
  out.reserve(static_cast<std::size_t>(config.num_tasks));
  for (int i = 0; i < config.num_tasks; ++i) {
    out.push_back(GenerateSyntheticTask(config, seed, i));
  }
  return out;
}

}  // namespace clore::corpus
