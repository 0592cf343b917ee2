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

#include "clore/evalharness/attention_report.h"

#include <cstdio>
#include <cstdlib>

#include "clore/error.h"
#include "clore/parser/parser.h"

namespace clore::eval {
namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view BucketName(PositionBucket b) {
  switch (b) {
    case PositionBucket::kWithinSpan:
      return "within_span";
    case PositionBucket::kWithin5:
      return "le_5";
    case PositionBucket::kWithin10:
      return "le_10";
    case PositionBucket::kBeyond10:
      return "gt_10";
  }
  return "gt_10";
}

long SignedSpanDistance(std::size_t position, const corpus::KeywordSpan& span) {
  const auto pos = static_cast<long>(position);
  const auto begin = static_cast<long>(span.begin);
  const auto end = static_cast<long>(span.end);
  if (pos < begin) return pos - begin;
  if (pos >= end) return pos - (end - 1);
  return 0;
}

PositionBucket BucketOf(long signed_distance) {
  const long d = std::labs(signed_distance);
  if (d == 0) return PositionBucket::kWithinSpan;
  if (d <= 5) return PositionBucket::kWithin5;
  if (d <= 10) return PositionBucket::kWithin10;
  return PositionBucket::kBeyond10;
}

AttentionHistogram AttentionPositionAnalysis(const reasoner::Model& model,
                                             std::span<const corpus::TaskSpec> tasks) {
  AttentionHistogram h;
  for (const auto& task : tasks) {
    for (std::size_t i = 0; i < task.explanations.size(); ++i) {
      const auto& e = task.explanations[i];
      if (!e.keyword_span) continue;
      const auto parsed = parser::Parse(e, model.vocab, model.encoder, model.parser,
                                        model.config.max_tokens);
      AttentionPoint best;
      bool have = false;
      for (std::size_t t = 0; t < parsed.attention.size(); ++t) {
        const auto top = parser::TopAttention(parsed, t, 1).at(0);
        const long d = SignedSpanDistance(top.position, *e.keyword_span);
        if (!have || std::labs(d) < std::labs(best.distance)) {
          best = {task.task_id, i, t, top.position, top.token, d, BucketOf(d)};
          have = true;
        }
      }
      if (have) h.points.push_back(std::move(best));
    }
  }
  if (h.points.empty()) {
    throw InvalidArgument("attention position report needs explanations with keyword spans");
  }
  for (const auto& p : h.points) ++h.counts[static_cast<std::size_t>(p.bucket)];
  double running = 0;
  for (std::size_t b = 0; b < kPositionBuckets; ++b) {
    h.proportions[b] =
        static_cast<double>(h.counts[b]) / static_cast<double>(h.points.size());
    running += h.proportions[b];
    h.cumulative[b] = running;
  }
  // The last cumulative entry is exactly 1 by definition of the partition.
  h.cumulative[kPositionBuckets - 1] = 1.0;
  return h;
}

std::string AttentionCsv(const AttentionHistogram& h) {
  std::string out = "bucket,count,proportion,cumulative\n";
  char buf[128];
  for (std::size_t b = 0; b < kPositionBuckets; ++b) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f\n",
                  std::string(BucketName(static_cast<PositionBucket>(b))).c_str(),
                  h.counts[b], h.proportions[b], h.cumulative[b]);
    out += buf;
  }
  return out;
}

std::string AttentionPointsCsv(const AttentionHistogram& h) {
  std::string out = "task_id,explanation,attribute,position,token,distance,bucket\n";
  char buf[64];
  for (const auto& p : h.points) {
    std::snprintf(buf, sizeof buf, ",%zu,%zu,%zu,", p.explanation, p.attribute + 1,
                  p.position);
    out += p.task_id + buf;
    out += CsvField(p.token);
    out += "," + std::to_string(p.distance) + "," + std::string(BucketName(p.bucket)) +
           "\n";
  }
  return out;
}

std::string AttentionSummary(const AttentionHistogram& h) {
  std::string out = "explanations: " + std::to_string(h.points.size()) + "\n";
  char buf[128];
  for (std::size_t b = 0; b < kPositionBuckets; ++b) {
    std::snprintf(buf, sizeof buf, "%-12s %6.2f%%  (cumulative %6.2f%%)\n",
                  std::string(BucketName(static_cast<PositionBucket>(b))).c_str(),
                  100.0 * h.proportions[b], 100.0 * h.cumulative[b]);
    out += buf;
  }
  return out;
}

}  // namespace clore::eval
