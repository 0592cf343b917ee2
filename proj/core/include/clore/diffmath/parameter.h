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

#ifndef CLORE_DIFFMATH_PARAMETER_H_
#define CLORE_DIFFMATH_PARAMETER_H_

#include <string>
#include <utility>
#include <vector>

#include "clore/diffmath/value.h"

namespace clore::diff {

// A trainable tensor with its gradient accumulator.
//
// `frozen_rows` (when non-empty, one flag per row) marks rows that receive no
// gradient and are skipped by the optimizer; used for pretrained embeddings.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, Value value)
      : name(std::move(name)),
        value(std::move(value)),
        grad(this->value.shape()) {}

  std::string name;
  Value value;
  Value grad;
  std::vector<bool> frozen_rows;

  bool row_frozen(std::size_t r) const {
    return !frozen_rows.empty() && frozen_rows[r];
  }
  void ZeroGrad() { grad = Value(value.shape()); }
};

}  // namespace clore::diff

#endif  // CLORE_DIFFMATH_PARAMETER_H_
