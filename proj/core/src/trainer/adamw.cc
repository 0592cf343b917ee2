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

#include "clore/trainer/adamw.h"

#include <cmath>

#include "clore/error.h"

namespace clore::trainer {

AdamW::AdamW(std::vector<diff::Parameter*> params, AdamWConfig config)
    : params_(std::move(params)), config_(config) {
  if (!(config_.lr >= 0) || !(config_.eps > 0) || !(config_.beta1 >= 0 && config_.beta1 < 1) ||
      !(config_.beta2 >= 0 && config_.beta2 < 1) || !(config_.weight_decay >= 0)) {
    throw InvalidArgument("invalid AdamW hyperparameters");
  }
  for (const auto* p : params_) {
    m_.emplace_back(p->value.size(), 0.0);
    v_.emplace_back(p->value.size(), 0.0);
  }
}

void AdamW::Step() {
  ++steps_;
  const double t = static_cast<double>(steps_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    diff::Parameter& p = *params_[i];
    const std::size_t cols = p.value.cols();
    auto value = p.value.data();
    const auto grad = p.grad.data();
    auto& m = m_[i];
    auto& v = v_[i];
    for (std::size_t j = 0; j < value.size(); ++j) {
      if (p.row_frozen(j / cols)) continue;
      const double g = grad[j];
      m[j] = config_.beta1 * m[j] + (1.0 - config_.beta1) * g;
      v[j] = config_.beta2 * v[j] + (1.0 - config_.beta2) * g * g;
      const double update = (m[j] / c1) / (std::sqrt(v[j] / c2) + config_.eps);
      value[j] -= config_.lr * (update + config_.weight_decay * value[j]);
    }
  }
}

}  // namespace clore::trainer
