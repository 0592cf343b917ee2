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

#ifndef CLORE_ENCODER_VOCABULARY_H_
#define CLORE_ENCODER_VOCABULARY_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clore/corpus/task.h"

namespace clore::encoder {

inline constexpr std::size_t kMaxTokens = 128;

// Dense token ids. [PAD] = 0, [UNK] = 1, [SEP] = 2 are always present.
class Vocabulary {
 public:
  Vocabulary();

  // Returns the id of `token`, adding it if new.
  std::size_t Add(std::string_view token);
  // Id of `token`, or the [UNK] id.
  std::size_t Id(std::string_view token) const;
  bool Contains(std::string_view token) const;
  const std::string& Token(std::size_t id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  std::size_t unk_id() const { return 1; }

  // Ids of `tokens`, truncated to `max_tokens`.
  std::vector<std::size_t> Ids(std::span<const std::string> tokens,
                               std::size_t max_tokens = kMaxTokens) const;

  // "token\tid" lines in id order.
  std::string Dump() const;
  // Inverse of Dump. Throws FormatError.
  static Vocabulary Parse(std::string_view text);

  // Specials followed by the sorted tokens of every explanation text and
  // every serialized row of `tasks`.
  static Vocabulary Build(std::span<const corpus::TaskSpec> tasks);

  bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t, std::less<>> ids_;
};

}  // namespace clore::encoder

#endif  // CLORE_ENCODER_VOCABULARY_H_
