// Copyright 2026 The twirlzne authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "twirlzne/harness.hpp"

namespace twirlzne {

/// Machine-readable result table; every emitted file carries provenance
/// comment lines (config hash, seed, version) and numeric cells use
/// shortest-round-trip formatting, so re-runs are bit-identical.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  void add_row(std::initializer_list<std::string> cells);
  void write_csv(const std::filesystem::path& path) const;
  std::string to_csv() const;
  static ResultTable read_csv(const std::filesystem::path& path);
};

constexpr const char* kArtifactVersion = "0.1.0";

uint64_t config_hash(const std::string& canonical_json);

/// Run-wide options shared by every experiment subcommand.
struct RunOptions {
  uint64_t seed = 1;
  bool seed_overridden = false;
  std::filesystem::path out;
  int workers = 1;
  bool stretch = false;
  bool allow_partial = false;
};

struct ExperimentOutcome {
  ResultTable table;
  std::string jsonl;       // raw trial records when the experiment runs VQE
  int failed_trials = 0;
  std::string report;      // human-readable summary printed to stdout
};

// The figure families as machine-readable tables.
ExperimentOutcome cmd_curve(const std::string& config_json,
                            const RunOptions& options);
ExperimentOutcome cmd_landscape(const std::string& config_json,
                                const RunOptions& options);
ExperimentOutcome cmd_precision(const std::string& config_json,
                                const RunOptions& options);
ExperimentOutcome cmd_linearity(const std::string& config_json,
                                const RunOptions& options);
ExperimentOutcome cmd_ensemble(const std::string& config_json,
                               const RunOptions& options);
ExperimentOutcome cmd_twirl_inspect(const std::string& config_json,
                                    const RunOptions& options);
ExperimentOutcome cmd_calibrate(const std::string& config_json,
                                const RunOptions& options);

/// Dispatch by subcommand name; writes the table (and .jsonl when present)
/// under options.out. Returns a process exit code.
int run_experiment(const std::string& kind, const std::string& config_json,
                   RunOptions options, std::ostream& log);

}  // namespace twirlzne
