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

#include "clore/reasoner/model.h"

#include <cmath>
#include <string>

#include "clore/error.h"

namespace clore::reasoner {
namespace {

double Softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kFull:
      return "full";
    case Variant::kPlain:
      return "plain";
    case Variant::kSim:
      return "sim";
  }
  return "full";
}

Variant ParseVariant(std::string_view name) {
  if (name == "full") return Variant::kFull;
  if (name == "plain") return Variant::kPlain;
  if (name == "sim" || name == "sim-baseline") return Variant::kSim;
  throw InvalidArgument("unknown variant '" + std::string(name) +
                        "' (expected full, plain or sim)");
}

double InverseSoftplus(double y) {
  if (!(y > 0)) throw InvalidArgument("softplus inverse needs y > 0");
  return y > 30 ? y + std::log(-std::expm1(-y)) : std::log(std::expm1(y));
}

double Model::tau() const { return Softplus(tau_raw.value.scalar()); }
double Model::beta() const { return Softplus(beta_raw.value.scalar()); }

std::vector<diff::Parameter*> Model::Parameters() {
  std::vector<diff::Parameter*> out = encoder.All();
  for (auto* p : parser.All()) out.push_back(p);
  out.push_back(&tau_raw);
  out.push_back(&beta_raw);
  return out;
}

std::vector<const diff::Parameter*> Model::Parameters() const {
  auto mut = const_cast<Model*>(this)->Parameters();
  return {mut.begin(), mut.end()};
}

Model Model::Init(const ModelConfig& config, encoder::Vocabulary vocab,
                  std::uint64_t seed) {
  if (!(config.tau_init > 0) || !(config.beta_init > 0)) {
    throw InvalidArgument("tau and beta must start positive");
  }
  if (config.max_tokens == 0) throw InvalidArgument("max_tokens must be > 0");
  Model m;
  m.config = config;
  m.encoder = encoder::InitEncoder(vocab.size(), config.dim, seed);
  m.parser = parser::InitParser(config.dim, config.t_max, seed);
  m.vocab = std::move(vocab);
  m.tau_raw = diff::Parameter("reasoner.tau_raw",
                              diff::Value::Scalar(InverseSoftplus(config.tau_init)));
  m.beta_raw = diff::Parameter(
      "reasoner.beta_raw", diff::Value::Scalar(InverseSoftplus(config.beta_init)));
  return m;
}

}  // namespace clore::reasoner
