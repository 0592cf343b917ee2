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

#include "clore/encoder/vocabulary.h"

#include <set>

#include "clore/corpus/text.h"
#include "clore/encoder/tokenizer.h"
#include "clore/error.h"

namespace clore::encoder {

Vocabulary::Vocabulary() {
  Add(kPadToken);
  Add(kUnkToken);
  Add(kSepToken);
}

std::size_t Vocabulary::Add(std::string_view token) {
  if (const auto it = ids_.find(token); it != ids_.end()) return it->second;
  const std::size_t id = tokens_.size();
  tokens_.emplace_back(token);
  ids_.emplace(std::string(token), id);
  return id;
}

std::size_t Vocabulary::Id(std::string_view token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? unk_id() : it->second;
}

bool Vocabulary::Contains(std::string_view token) const {
  return ids_.find(token) != ids_.end();
}

std::vector<std::size_t> Vocabulary::Ids(std::span<const std::string> tokens,
                                         std::size_t max_tokens) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size() && i < max_tokens; ++i) {
    out.push_back(Id(tokens[i]));
  }
  return out;
}

std::string Vocabulary::Dump() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::Parse(std::string_view text) {
  Vocabulary v;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.rfind('\t');
    const auto fail = [&](const std::string& what) {
      throw FormatError("vocabulary line " + std::to_string(line_no) + ": " +
                        what);
    };
    if (tab == std::string_view::npos || tab == 0) fail("expected token<TAB>id");
    const std::string id_text(line.substr(tab + 1));
    std::size_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoul(id_text, &used);
      if (used != id_text.size()) fail("bad id '" + id_text + "'");
    } catch (const std::logic_error&) {
      fail("bad id '" + id_text + "'");
    }
    const std::string_view token = line.substr(0, tab);
    if (id < 3) {
      if (v.Token(id) != token) fail("special token mismatch at id " + id_text);
      continue;
    }
    if (id != v.size() || v.Contains(token)) fail("ids must be dense and unique");
    v.Add(token);
  }
  return v;
}

Vocabulary Vocabulary::Build(std::span<const corpus::TaskSpec> tasks) {
  std::set<std::string> seen;
  auto take = [&](std::string_view text) {
    for (auto& t : Tokenize(text)) seen.insert(std::move(t));
  };
  for (const auto& task : tasks) {
    for (const auto& e : task.explanations) take(e.text);
    for (const auto& row : task.rows) {
      take(corpus::SerializeRow(task.columns, row.values));
    }
  }
  Vocabulary v;
  for (const auto& t : seen) v.Add(t);
  return v;
}

}  // namespace clore::encoder
