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

// Task files and suite manifests.
//
// A task file is one JSON object:
//
//   {"task_id": "...", "split": "seen",
//    "columns": ["odor", ...], "classes": ["alpha", ...],
//    "rows": [{"values": ["pungent", ...], "label": "alpha"}, ...],
//    "explanations": [{"class": "alpha", "text": "...",
//                      "keyword_span": [3, 5], "quantifier": "usually",
//                      "rule": {"template": "a1 ∧ a2",
//                               "predicates": [{"column": "odor",
//                                               "value": "pungent"}, ...]},
//                      "compositional": true}, ...]}
//
// "split", "keyword_span", "quantifier" and "rule" are optional. Unknown keys
// are ignored with a warning. A manifest is a JSON list of
// {"path": "tasks/x.json", "split": "seen"}, paths relative to the manifest.

#ifndef CLORE_CORPUS_TASK_IO_H_
#define CLORE_CORPUS_TASK_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clore/corpus/task.h"

namespace clore::corpus {

// Deterministic pretty-printed JSON with a trailing newline.
std::string TaskToJson(const TaskSpec& task);

// Throws FormatError naming `source` and the offending line or field.
// Warnings about ignored keys are appended to `warnings` when given and
// logged either way.
TaskSpec TaskFromJson(std::string_view json, std::string_view source,
                      std::vector<std::string>* warnings = nullptr);

TaskSpec LoadTask(const std::filesystem::path& path,
                  std::vector<std::string>* warnings = nullptr);
void SaveTask(const std::filesystem::path& path, const TaskSpec& task);

// Tasks in manifest order, each tagged with its manifest split.
std::vector<TaskSpec> LoadSuite(const std::filesystem::path& manifest,
                                std::vector<std::string>* warnings = nullptr);

// Writes dir/tasks/<task_id>.json and dir/manifest.json.
void SaveSuite(const std::filesystem::path& dir,
               std::span<const TaskSpec> tasks);

// Whole-file helpers shared by the artifact writers.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace clore::corpus

#endif  // CLORE_CORPUS_TASK_IO_H_
