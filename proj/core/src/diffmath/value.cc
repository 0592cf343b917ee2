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

#include "clore/diffmath/value.h"

#include <algorithm>
#include <cmath>

#include "clore/error.h"

namespace clore::diff {

std::string Shape::ToString() const {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

Value::Value(Shape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.size()) {
    throw InvalidArgument("value of shape " + shape_.ToString() + " given " +
                          std::to_string(data_.size()) + " entries");
  }
}

Value Value::Vector(std::vector<double> data) {
  const Shape shape{data.size(), 1};
  return Value(shape, std::move(data));
}

Value Value::Matrix(std::size_t rows, std::size_t cols,
                    std::vector<double> data) {
  return Value(Shape{rows, cols}, std::move(data));
}

void Value::Fill(double x) { std::fill(data_.begin(), data_.end(), x); }

bool Value::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace clore::diff
