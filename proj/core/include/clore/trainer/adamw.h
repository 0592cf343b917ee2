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

#ifndef CLORE_TRAINER_ADAMW_H_
#define CLORE_TRAINER_ADAMW_H_

#include <cstdint>
#include <vector>

#include "clore/diffmath/parameter.h"

namespace clore::trainer {

struct AdamWConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

// Adam with decoupled weight decay:
//   p <- p - lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * p).
// Frozen rows are left untouched.
class AdamW {
 public:
  AdamW(std::vector<diff::Parameter*> params, AdamWConfig config);

  // Applies one update from the current gradients.
  void Step();
  std::int64_t steps() const { return steps_; }

 private:
  std::vector<diff::Parameter*> params_;
  AdamWConfig config_;
  std::vector<std::vector<double>> m_, v_;
  std::int64_t steps_ = 0;
};

}  // namespace clore::trainer

#endif  // CLORE_TRAINER_ADAMW_H_
