// Copyright 2026 The qamem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qamem/query.hpp"
#include "qamem/statevec.hpp"

namespace qamem::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kNumericalError = 3,
};

enum class Format { json, csv };

struct ExperimentConfig {
  std::filesystem::path pattern_file;
  std::string input;
  std::optional<std::string> mask;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  /// "auto" or a positive integer.
  std::string threshold = "auto";
  std::optional<std::filesystem::path> f_table;
  MaskScale mask_scale = MaskScale::pattern_length;
  std::optional<std::filesystem::path> output;
  Format format = Format::json;
  std::size_t max_qubits = kDefaultMaxQubits;
  /// Worker threads for experiment; 0 means one per hardware thread.
  std::size_t workers = 0;
};

// Each command writes its result to config.output (or `out`) and returns an
// ExitCode. InvalidInput and NumericalError propagate to run_cli.
int cmd_store(const std::filesystem::path& pattern_file,
              const std::optional<std::filesystem::path>& dump_path, const ExperimentConfig& config,
              std::ostream& out);
int cmd_report(const ExperimentConfig& config, std::ostream& out);
int cmd_recognize(const ExperimentConfig& config, std::ostream& out);
int cmd_experiment(const ExperimentConfig& config, std::ostream& out);
int cmd_threshold(const ExperimentConfig& config, std::ostream& out);
int cmd_worst_case(std::size_t n, std::size_t x, bool gate_level, const ExperimentConfig& config,
                   std::ostream& out);

/// Parses `args` (without the program name), dispatches to a subcommand and
/// maps errors onto exit codes: 2 for bad input, 3 for numerical invariants.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qamem::cli
