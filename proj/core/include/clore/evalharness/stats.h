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

#ifndef CLORE_EVALHARNESS_STATS_H_
#define CLORE_EVALHARNESS_STATS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clore::eval {

enum class CorrelationStatus {
  kDefined,
  // Fewer than two points.
  kTooFew,
  // One side has zero variance.
  kDegenerate,
};

std::string_view CorrelationStatusName(CorrelationStatus s);

struct Correlation {
  CorrelationStatus status = CorrelationStatus::kTooFew;
  // Meaningful only when status is kDefined.
  double value = 0.0;

  bool defined() const { return status == CorrelationStatus::kDefined; }
  // "0.123456" or the status name.
  std::string ToString() const;
};

// x and y must have equal lengths.
Correlation Pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average ranks (ties share the mean rank).
Correlation Spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values get the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> v);

double Mean(std::span<const double> v);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double SampleStddev(std::span<const double> v);

}  // namespace clore::eval

#endif  // CLORE_EVALHARNESS_STATS_H_
