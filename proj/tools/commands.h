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

// Subcommand bodies of the clore tool. Each throws clore::Error on any
// rejection; main() turns that into a one-line diagnostic.

#ifndef CLORE_TOOLS_COMMANDS_H_
#define CLORE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace clore::cli {

struct RunConfig {
  std::string subcommand;

  // Paths.
  std::string suite;  // manifest.json
  std::vector<std::string> checkpoints;
  std::string out;
  std::string quantifier_table;
  std::string pretrained_vectors;

  // Overrides. Unset optionals keep the library defaults.
  std::uint64_t seed = 0;
  std::optional<int> t_max;
  std::optional<std::string> variant;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<int> dim;
  std::optional<int> batch_size;
  std::string perturb = "none";
  std::optional<double> compositional_ratio;
  bool allow_variant_override = false;
  bool freeze_pretrained = false;
  int jobs = 1;

  // gen-data.
  int tasks = 50;
  double seen_fraction = 0.8;

  // Task selection for eval / parse / classify / report.
  std::string split = "unseen";  // seen, unseen or all
  std::string task;
  std::vector<std::size_t> rows;

  // report.
  std::vector<std::string> analyses;

  // Throws InvalidArgument on conflicting or out-of-range flags.
  void Validate() const;
};

void GenData(const RunConfig& config, std::ostream& out);
void TrainCommand(const RunConfig& config, std::ostream& out);
void EvalCommand(const RunConfig& config, std::ostream& out);
void ParseCommand(const RunConfig& config, std::ostream& out);
void ClassifyCommand(const RunConfig& config, std::ostream& out);
void ReportCommand(const RunConfig& config, std::ostream& out);

// Dispatches on config.subcommand after Validate().
void Run(const RunConfig& config, std::ostream& out);

}  // namespace clore::cli

#endif  // CLORE_TOOLS_COMMANDS_H_
