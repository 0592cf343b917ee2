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

#include "clore/evalharness/quantifier.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "clore/corpus/generator.h"
#include "clore/corpus/task_io.h"
#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "clore/parser/parser.h"

namespace clore::eval {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

QuantifierTable ParseQuantifierTable(std::string_view text, std::string_view source) {
  QuantifierTable table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto sep = line.find_first_of("\t,");
    if (sep == std::string_view::npos) {
      throw FormatError(where + ": expected 'word<TAB>probability'");
    }
    const std::string word(Trim(line.substr(0, sep)));
    const std::string_view num = Trim(line.substr(sep + 1));
    double p = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (word.empty() || ec != std::errc() || ptr != num.data() + num.size()) {
      throw FormatError(where + ": cannot parse '" + std::string(line) + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw FormatError(where + ": probability must lie in [0, 1]");
    }
    if (!table.emplace(word, p).second) {
      throw FormatError(where + ": duplicate quantifier '" + word + "'");
    }
  }
  return table;
}

QuantifierTable LoadQuantifierTable(const std::filesystem::path& path) {
  return ParseQuantifierTable(corpus::ReadFile(path), path.string());
}

std::vector<std::string> DefaultQuantifierWords() {
  return {corpus::kQuantifierWords.begin(), corpus::kQuantifierWords.end()};
}

std::optional<std::string> DetectQuantifier(std::string_view text,
                                            std::span<const std::string> words) {
  for (const auto& token : encoder::Tokenize(text)) {
    for (const auto& w : words) {
      if (token == w) return w;
    }
  }
  return std::nullopt;
}

QuantifierReport QuantifierAnalysis(const reasoner::Model& model,
                                    std::span<const corpus::TaskSpec> tasks,
                                    const QuantifierTable& reference,
                                    std::span<const std::string> words) {
  std::vector<double> sums(words.size(), 0.0);
  std::vector<std::size_t> counts(words.size(), 0);
  for (const auto& task : tasks) {
    for (const auto& e : task.explanations) {
      const auto q = DetectQuantifier(e.text, words);
      if (!q) continue;
      std::size_t i = 0;
      while (words[i] != *q) ++i;
      const auto parsed = parser::Parse(e, model.vocab, model.encoder, model.parser,
                                        model.config.max_tokens);
      sums[i] += parsed.certainty;
      ++counts[i];
    }
  }
  QuantifierReport report;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (counts[i] == 0) continue;
    QuantifierRow row{words[i], counts[i], sums[i] / static_cast<double>(counts[i]), {}};
    if (const auto it = reference.find(words[i]); it != reference.end()) {
      row.reference = it->second;
      xs.push_back(row.mean_certainty);
      ys.push_back(it->second);
    }
    report.rows.push_back(std::move(row));
  }
  report.pearson = Pearson(xs, ys);
  return report;
}

std::string QuantifierCsv(const QuantifierReport& report) {
  std::string out = "quantifier,count,mean_certainty,reference\n";
  char buf[128];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, ",%zu,%.6f,", r.count, r.mean_certainty);
    out += r.word + buf;
    if (r.reference) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.reference);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string QuantifierSummary(const QuantifierReport& report) {
  std::string out = "quantifiers matched: " + std::to_string(report.rows.size()) + "\n";
  out += "pearson(mean c, reference): " + report.pearson.ToString() + "\n";
  return out;
}

}  // namespace clore::eval
