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

// Where the parser's top-attention tokens fall relative to annotated
// keyword spans.

#ifndef CLORE_EVALHARNESS_ATTENTION_REPORT_H_
#define CLORE_EVALHARNESS_ATTENTION_REPORT_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clore/corpus/task.h"
#include "clore/reasoner/model.h"

namespace clore::eval {

enum class PositionBucket { kWithinSpan, kWithin5, kWithin10, kBeyond10 };
inline constexpr std::size_t kPositionBuckets = 4;

std::string_view BucketName(PositionBucket b);

// 0 inside [begin, end); negative before the span, positive after it,
// measured to the nearest span endpoint.
long SignedSpanDistance(std::size_t position, const corpus::KeywordSpan& span);
PositionBucket BucketOf(long signed_distance);

struct AttentionPoint {
  std::string task_id;
  std::size_t explanation = 0;  // index within the task
  std::size_t attribute = 0;    // chosen slot, 0-based
  std::size_t position = 0;     // its top-attention token
  std::string token;
  long distance = 0;
  PositionBucket bucket = PositionBucket::kWithinSpan;
};

struct AttentionHistogram {
  std::vector<AttentionPoint> points;
  std::array<std::size_t, kPositionBuckets> counts{};
  std::array<double, kPositionBuckets> proportions{};
  std::array<double, kPositionBuckets> cumulative{};
};

// Uses every explanation with a keyword span; per explanation the slot whose
// top-attention token lies nearest the span (lowest slot on ties). Throws
// InvalidArgument when no explanation is annotated.
AttentionHistogram AttentionPositionAnalysis(const reasoner::Model& model,
                                             std::span<const corpus::TaskSpec> tasks);

// "bucket,count,proportion,cumulative" rows.
std::string AttentionCsv(const AttentionHistogram& h);
// One row per explanation.
std::string AttentionPointsCsv(const AttentionHistogram& h);
std::string AttentionSummary(const AttentionHistogram& h);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_ATTENTION_REPORT_H_
