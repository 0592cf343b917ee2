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

// Binary checkpoint container, little-endian:
//
//   "CLORECKP" u32:version
//   u64:n bytes   config echo (JSON, includes epoch, history, task ids)
//   u64:n bytes   vocabulary dump
//   u32:count, then per parameter:
//     u64:n name  u64:rows  u64:cols  f64[rows*cols]  u64:n u8[n] frozen rows
//   "END."
//
// Doubles are stored as raw IEEE bits, so a round trip is bit-exact.

#ifndef CLORE_TRAINER_CHECKPOINT_H_
#define CLORE_TRAINER_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "clore/reasoner/model.h"
#include "clore/trainer/trainer.h"

namespace clore::trainer {

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string SerializeCheckpoint(const Checkpoint& ck);

struct LoadOptions {
  // When set, the stored variant must match unless allow_variant_override;
  // with the override the loaded model runs as `expected_variant`.
  std::optional<reasoner::Variant> expected_variant;
  bool allow_variant_override = false;
};

// Throws FormatError on bad magic, version mismatch, truncation or
// inconsistent tensors; InvalidArgument on a refused variant.
Checkpoint ParseCheckpoint(std::string_view bytes, const LoadOptions& options = {},
                           std::string_view source = "<checkpoint>");

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const LoadOptions& options = {});

}  // namespace clore::trainer

#endif  // CLORE_TRAINER_CHECKPOINT_H_
