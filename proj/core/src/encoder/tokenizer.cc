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

#include "clore/encoder/tokenizer.h"

#include <cctype>

namespace clore::encoder {
namespace {

bool IsDetached(char c) {
  switch (c) {
    case '.':
    case ',':
    case '?':
    case '!':
    case '\'':
    case '"':
    case '(':
    case ')':
    case ':':
      return true;
    default:
      return false;
  }
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

void SplitChunk(std::string_view chunk, std::vector<std::string>& out) {
  for (std::string_view special : {kSepToken, kUnkToken, kPadToken}) {
    if (Lower(chunk) == Lower(special)) {
      out.emplace_back(special);
      return;
    }
  }
  std::string current;
  for (char c : chunk) {
    if (IsDetached(c)) {
      if (!current.empty()) out.push_back(Lower(current));
      current.clear();
      out.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(Lower(current));
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) SplitChunk(text.substr(start, i - start), out);
  }
  if (out.empty()) out.emplace_back(kUnkToken);
  return out;
}

}  // namespace clore::encoder
