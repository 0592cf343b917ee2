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

#include "clore/encoder/embedding.h"

#include <charconv>
#include <cmath>

#include "clore/corpus/task_io.h"
#include "clore/encoder/tokenizer.h"
#include "clore/error.h"
#include "clore/rng.h"

namespace clore::encoder {

using diff::Parameter;
using diff::Shape;
using diff::Value;

EncoderParams InitEncoder(std::size_t vocab_size, std::size_t dim,
                          std::uint64_t seed) {
  if (vocab_size == 0 || dim == 0) {
    throw InvalidArgument("encoder needs a nonempty vocabulary and dim > 0");
  }
  Rng rng = MakeRng(seed, Stream::kInit, HashName("encoder"));
  EncoderParams p;
  Value table(Shape{vocab_size, dim});
  for (double& x : table.data()) x = Normal(rng, 0.0, kEmbeddingInitStddev);
  Value w(Shape{dim, dim});
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (double& x : w.data()) x = Normal(rng, 0.0, scale);
  p.table = Parameter("encoder.table", std::move(table));
  p.pool_w = Parameter("encoder.pool_w", std::move(w));
  p.pool_b = Parameter("encoder.pool_b", Value(Shape{dim, 1}));
  return p;
}

PretrainedCoverage LoadPretrainedVectorsFromText(std::string_view text,
                                                 const Vocabulary& vocab,
                                                 EncoderParams& params,
                                                 bool freeze) {
  const std::size_t d = params.dim();
  PretrainedCoverage cov;
  std::vector<bool> loaded(vocab.size(), false);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) {
      throw FormatError("pretrained vectors line " + std::to_string(line_no) +
                        ": " + what);
    };
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) fail("expected token<TAB>values");
    const std::string_view token = line.substr(0, tab);
    std::vector<double> vec;
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
        rest.remove_prefix(1);
      }
      if (rest.empty()) break;
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), x);
      if (ec != std::errc{} || !std::isfinite(x)) fail("bad number");
      vec.push_back(x);
      rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
      if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') {
        fail("bad number");
      }
    }
    if (vec.size() != d) {
      fail("expected " + std::to_string(d) + " values, found " +
           std::to_string(vec.size()));
    }
    ++cov.file_rows;
    if (!vocab.Contains(token)) continue;
    const std::size_t id = vocab.Id(token);
    auto row = params.table.value.row(id);
    std::copy(vec.begin(), vec.end(), row.begin());
    if (!loaded[id]) ++cov.covered;
    loaded[id] = true;
  }
  if (freeze) {
    params.table.frozen_rows.resize(vocab.size(), false);
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      if (loaded[i]) params.table.frozen_rows[i] = true;
    }
  }
  return cov;
}

PretrainedCoverage LoadPretrainedVectors(const std::filesystem::path& path,
                                         const Vocabulary& vocab,
                                         EncoderParams& params, bool freeze) {
  return LoadPretrainedVectorsFromText(corpus::ReadFile(path), vocab, params,
                                       freeze);
}

EncodedVars EncodeOnTape(diff::Tape& tape, const EncoderParams& params,
                         std::span<const std::size_t> ids) {
  if (ids.empty()) throw InvalidArgument("cannot encode an empty token list");
  EncodedVars out;
  out.length = ids.size();
  out.tokens = tape.GatherRows(tape.Param(params.table),
                               std::vector<std::size_t>(ids.begin(), ids.end()));
  const diff::Var mean = tape.MeanRows(out.tokens);
  out.sentence = tape.Tanh(
      tape.Add(tape.MatVec(tape.Param(params.pool_w), mean),
               tape.Param(params.pool_b)));
  return out;
}

EncodedInput Encode(std::string_view text, const Vocabulary& vocab,
                    const EncoderParams& params, std::size_t max_tokens) {
  EncodedInput out;
  out.text = std::string(text);
  out.tokens = Tokenize(text);
  if (out.tokens.size() > max_tokens) out.tokens.resize(max_tokens);
  const auto ids = vocab.Ids(out.tokens, max_tokens);
  diff::Tape tape;
  const EncodedVars v = EncodeOnTape(tape, params, ids);
  out.vectors = tape.value(v.tokens);
  out.sentence = tape.value(v.sentence);
  return out;
}

}  // namespace clore::encoder
