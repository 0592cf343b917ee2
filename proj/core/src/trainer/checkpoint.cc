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

#include "clore/trainer/checkpoint.h"

#include <bit>
#include <cstring>
#include <map>

#include "clore/corpus/task_io.h"
#include "clore/error.h"
#include "json.hpp"

namespace clore::trainer {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint IO assumes a little-endian host");

using Json = nlohmann::ordered_json;

constexpr std::string_view kMagic = "CLORECKP";
constexpr std::string_view kEnd = "END.";

class Writer {
 public:
  template <typename T>
  void Pod(T x) {
    char buf[sizeof(T)];
    std::memcpy(buf, &x, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void Raw(std::string_view s) { out_.append(s); }
  void Bytes(std::string_view s) {
    Pod<std::uint64_t>(s.size());
    Raw(s);
  }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(std::string_view in, std::string_view source) : in_(in), source_(source) {}

  template <typename T>
  T Pod(const char* what) {
    T x;
    std::memcpy(&x, Take(sizeof(T), what).data(), sizeof(T));
    return x;
  }
  std::string_view Take(std::size_t n, const char* what) {
    if (n > in_.size() - pos_) {
      throw FormatError(std::string(source_) + ": truncated while reading " + what);
    }
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string_view Bytes(const char* what) {
    return Take(Pod<std::uint64_t>(what), what);
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

Json ConfigJson(const Checkpoint& ck) {
  const TrainConfig& c = ck.config;
  Json j;
  j["variant"] = reasoner::VariantName(ck.model.config.variant);
  j["dim"] = ck.model.config.dim;
  j["t_max"] = ck.model.config.t_max;
  j["tau_init"] = ck.model.config.tau_init;
  j["beta_init"] = ck.model.config.beta_init;
  j["max_tokens"] = ck.model.config.max_tokens;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["optimizer"] = {{"lr", c.optimizer.lr},
                    {"beta1", c.optimizer.beta1},
                    {"beta2", c.optimizer.beta2},
                    {"eps", c.optimizer.eps},
                    {"weight_decay", c.optimizer.weight_decay}};
  j["pretrained_vectors"] = c.pretrained_vectors;
  j["freeze_pretrained"] = c.freeze_pretrained;
  j["epoch"] = ck.epoch;
  j["train_task_ids"] = ck.train_task_ids;
  Json hist = Json::array();
  for (const auto& r : ck.history) {
    hist.push_back(
        {{"epoch", r.epoch}, {"split", r.split}, {"accuracy", r.accuracy}, {"loss", r.loss}});
  }
  j["history"] = std::move(hist);
  return j;
}

void ReadConfig(const Json& j, Checkpoint& ck) {
  auto& m = ck.config.model;
  m.variant = reasoner::ParseVariant(j.at("variant").get<std::string>());
  m.dim = j.at("dim").get<std::size_t>();
  m.t_max = j.at("t_max").get<int>();
  m.tau_init = j.at("tau_init").get<double>();
  m.beta_init = j.at("beta_init").get<double>();
  m.max_tokens = j.at("max_tokens").get<std::size_t>();
  ck.config.epochs = j.at("epochs").get<int>();
  ck.config.batch_size = j.at("batch_size").get<std::size_t>();
  ck.config.seed = j.at("seed").get<std::uint64_t>();
  const auto& o = j.at("optimizer");
  ck.config.optimizer = {o.at("lr").get<double>(), o.at("beta1").get<double>(),
                         o.at("beta2").get<double>(), o.at("eps").get<double>(),
                         o.at("weight_decay").get<double>()};
  ck.config.pretrained_vectors = j.at("pretrained_vectors").get<std::string>();
  ck.config.freeze_pretrained = j.at("freeze_pretrained").get<bool>();
  ck.epoch = j.at("epoch").get<int>();
  ck.train_task_ids = j.at("train_task_ids").get<std::vector<std::string>>();
  for (const auto& r : j.at("history")) {
    ck.history.push_back({r.at("epoch").get<int>(), r.at("split").get<std::string>(),
                          r.at("accuracy").get<double>(), r.at("loss").get<double>()});
  }
}

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& ck) {
  Writer w;
  w.Raw(kMagic);
  w.Pod<std::uint32_t>(kCheckpointVersion);
  w.Bytes(ConfigJson(ck).dump());
  w.Bytes(ck.model.vocab.Dump());
  const auto params = ck.model.Parameters();
  w.Pod<std::uint32_t>(static_cast<std::uint32_t>(params.size()));
  for (const auto* p : params) {
    w.Bytes(p->name);
    w.Pod<std::uint64_t>(p->value.rows());
    w.Pod<std::uint64_t>(p->value.cols());
    for (const double x : p->value.data()) w.Pod<double>(x);
    std::string frozen;
    for (const bool f : p->frozen_rows) frozen.push_back(f ? 1 : 0);
    w.Bytes(frozen);
  }
  w.Raw(kEnd);
  return w.Take();
}

Checkpoint ParseCheckpoint(std::string_view bytes, const LoadOptions& options,
                           std::string_view source) {
  const std::string src(source);
  Reader r(bytes, source);
  if (bytes.size() < kMagic.size() || r.Take(kMagic.size(), "magic") != kMagic) {
    throw FormatError(src + ": not a checkpoint (bad magic)");
  }
  const auto version = r.Pod<std::uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw FormatError(src + ": checkpoint version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kCheckpointVersion) + ")");
  }

  Checkpoint ck;
  const auto config_text = r.Bytes("config");
  try {
    ReadConfig(Json::parse(config_text), ck);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(src + ": bad config block: " + e.what());
  }
  auto vocab = encoder::Vocabulary::Parse(r.Bytes("vocabulary"));

  std::map<std::string, diff::Parameter, std::less<>> stored;
  const auto count = r.Pod<std::uint32_t>("parameter count");
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name(r.Bytes("parameter name"));
    const auto rows = r.Pod<std::uint64_t>("parameter shape");
    const auto cols = r.Pod<std::uint64_t>("parameter shape");
    if (cols != 0 && rows > (bytes.size() / sizeof(double)) / cols) {
      throw FormatError(src + ": parameter '" + name + "' has an implausible shape");
    }
    std::vector<double> data(rows * cols);
    for (auto& x : data) x = r.Pod<double>("parameter data");
    diff::Parameter p(name, diff::Value(diff::Shape{rows, cols}, std::move(data)));
    for (const char f : r.Bytes("frozen rows")) p.frozen_rows.push_back(f != 0);
    if (!p.frozen_rows.empty() && p.frozen_rows.size() != rows) {
      throw FormatError(src + ": parameter '" + name + "' frozen-row mask size mismatch");
    }
    stored.emplace(name, std::move(p));
  }
  if (r.Take(kEnd.size(), "end marker") != kEnd || !r.done()) {
    throw FormatError(src + ": missing or misplaced end marker");
  }

  ck.model = reasoner::Model::Init(ck.config.model, std::move(vocab), 0);
  auto params = ck.model.Parameters();
  if (params.size() != stored.size()) {
    throw FormatError(src + ": expected " + std::to_string(params.size()) +
                      " parameters, found " + std::to_string(stored.size()));
  }
  for (auto* p : params) {
    auto it = stored.find(p->name);
    if (it == stored.end()) {
      throw FormatError(src + ": missing parameter '" + p->name + "'");
    }
    if (!(it->second.value.shape() == p->value.shape())) {
      throw FormatError(src + ": parameter '" + p->name + "' has shape " +
                        it->second.value.shape().ToString() + ", expected " +
                        p->value.shape().ToString());
    }
    p->value = std::move(it->second.value);
    p->frozen_rows = std::move(it->second.frozen_rows);
  }

  if (options.expected_variant && *options.expected_variant != ck.config.model.variant) {
    if (!options.allow_variant_override) {
      throw InvalidArgument(
          src + ": checkpoint was trained as variant '" +
          std::string(reasoner::VariantName(ck.config.model.variant)) +
          "', refusing to evaluate it as '" +
          std::string(reasoner::VariantName(*options.expected_variant)) +
          "' without the override flag");
    }
    ck.model.config.variant = *options.expected_variant;
  }
  return ck;
}

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  corpus::WriteFile(path, SerializeCheckpoint(ck));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path, const LoadOptions& options) {
  return ParseCheckpoint(corpus::ReadFile(path), options, path.string());
}

}  // namespace clore::trainer
